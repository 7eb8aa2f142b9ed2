#include "xmcts/session.h"

#include "xmcts/errors.h"

namespace xmcts {

std::string_view controller_name(ControllerKind k) {
  switch (k) {
    case ControllerKind::kHuman:
      return "human";
    case ControllerKind::kEngine:
      return "mcts";
    case ControllerKind::kRandom:
      return "random";
  }
  return "human";
}

ControllerKind parse_controller(std::string_view name) {
  if (name == "human") return ControllerKind::kHuman;
  if (name == "mcts" || name == "engine") return ControllerKind::kEngine;
  if (name == "random") return ControllerKind::kRandom;
  throw ConfigError("unknown controller '" + std::string(name) + "' (expected human, mcts or random)");
}

bool operator==(const ControllerSpec& a, const ControllerSpec& b) {
  const SearchConfig& x = a.search;
  const SearchConfig& y = b.search;
  // Only the seed means anything to a non-engine controller.
  if (a.kind != ControllerKind::kEngine || b.kind != ControllerKind::kEngine) {
    return a.kind == b.kind && x.seed == y.seed;
  }
  return a.kind == b.kind && x.iterations == y.iterations && x.time_ms == y.time_ms &&
         x.exploration == y.exploration && x.seed == y.seed && x.enh == y.enh && x.params == y.params &&
         x.tree_reuse == y.tree_reuse;
}

void SessionConfig::validate() const {
  rules_for(game, size);  // throws ConfigError for unsupported sizes
  for (const auto& p : players) {
    if (p.kind == ControllerKind::kEngine) p.search.validate();
  }
  if (verbosity < 0 || verbosity > 2) throw ConfigError("verbosity must be 0, 1 or 2");
  if (analysis_iterations && *analysis_iterations < 1) throw ConfigError("analysis budget must be >= 1");
  if (analysis_engine) analysis_engine->validate();
  thresholds.validate();
}

struct GameSession::Engine {
  explicit Engine(const SearchConfig& c) : cfg(c), tables{MastTable{}, NGramTable(c.params.nst_max_length)} {}
  SearchConfig cfg;
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  std::optional<double> previous_score;
  std::uint64_t searches = 0;
};

namespace {

// Distinct, reproducible seed for the n-th search of an engine.
std::uint64_t search_seed(std::uint64_t base, std::uint64_t n) { return base ^ (n * 0x9E3779B97F4A7C15ULL); }

}  // namespace

GameSession::GameSession(SessionConfig cfg) : cfg_(std::move(cfg)), state_(initial_state(cfg_.game, cfg_.size)) {
  cfg_.validate();
  for (int i = 0; i < 2; ++i) {
    const auto& p = cfg_.players[static_cast<size_t>(i)];
    if (p.kind == ControllerKind::kEngine) engines_[static_cast<size_t>(i)] = std::make_unique<Engine>(p.search);
    random_[static_cast<size_t>(i)].seed(p.search.seed);
  }
}

GameSession::~GameSession() = default;

bool GameSession::automatic_turn() const {
  return !is_over() && cfg_.players[static_cast<size_t>(index(state_.to_move()))].kind != ControllerKind::kHuman;
}

const TurnRecord& GameSession::record(const MoveRecord& m, std::optional<TurnSnapshot> snap,
                                      std::optional<ExplanationReport> report) {
  const PlayerId mover = state_.to_move();
  state_ = apply(state_, m);
  for (auto& e : engines_) {
    if (e && e->tree) e->tree = e->cfg.tree_reuse ? advance_root(std::move(e->tree), m.id) : nullptr;
  }
  history_.push_back({mover, m.notation, serialize(state_), std::move(snap), std::move(report)});
  return history_.back();
}

const TurnRecord& GameSession::submit_move(std::string_view notation) {
  if (is_over()) throw UsageError("game is over");
  if (automatic_turn()) throw UsageError("not your turn: player " + std::to_string(index(state_.to_move()) + 1) +
                                         " is not human");
  return record(find_move(state_, notation), std::nullopt, std::nullopt);
}

const TurnRecord& GameSession::engine_move() {
  if (is_over()) throw UsageError("game is over");
  if (!automatic_turn()) throw UsageError("not the engine's turn");
  const auto p = static_cast<size_t>(index(state_.to_move()));
  if (cfg_.players[p].kind == ControllerKind::kRandom) {
    const auto ids = legal_move_ids(state_);
    const int id = ids[std::uniform_int_distribution<size_t>(0, ids.size() - 1)(random_[p])];
    return record(find_move(state_, state_.rules().notation(state_, id)), std::nullopt, std::nullopt);
  }
  Engine& e = *engines_[p];
  SearchConfig cfg = e.cfg;
  cfg.seed = search_seed(e.cfg.seed, e.searches++);
  stop_.store(false);
  cfg.stop = &stop_;
  auto result = search(state_, cfg, e.tables, e.tree, e.previous_score);
  e.previous_score = result.snapshot.selected().score;
  auto report = explain(result.snapshot, cfg_.verbosity, cfg_.thresholds);
  return record(result.selected, std::move(result.snapshot), std::move(report));
}

const SearchConfig& GameSession::analysis_engine_config() const {
  static const SearchConfig fallback = [] {
    SearchConfig c;
    c.iterations = 1000;
    c.enh.solver = true;
    return c;
  }();
  if (cfg_.analysis_engine) return *cfg_.analysis_engine;
  const auto p = static_cast<size_t>(index(state_.to_move()));
  if (engines_[p]) return engines_[p]->cfg;
  if (engines_[1 - p]) return engines_[1 - p]->cfg;
  return fallback;
}

ExplanationReport GameSession::analyze(std::optional<std::string_view> candidate) const {
  if (is_over()) throw UsageError("game is over");
  GameState s = state_;
  if (candidate) {
    s = apply(s, find_move(s, *candidate));
    if (s.is_terminal()) throw UsageError("candidate move ends the game; nothing to analyze");
  }
  SearchConfig cfg = analysis_engine_config();
  if (cfg_.analysis_iterations) {
    cfg.iterations = cfg_.analysis_iterations;
    cfg.time_ms.reset();
  }
  cfg.stop = nullptr;
  EnhancementTables tables{MastTable{}, NGramTable(cfg.params.nst_max_length)};
  const auto p = static_cast<size_t>(index(s.to_move()));
  if (engines_[p]) tables = engines_[p]->tables;
  std::unique_ptr<SearchNode> tree;
  const auto previous = engines_[p] ? engines_[p]->previous_score : std::nullopt;
  const auto result = search(s, cfg, tables, tree, previous);
  return explain(result.snapshot, cfg_.verbosity, cfg_.thresholds);
}

void play_out(GameSession& session) {
  while (!session.is_over()) {
    if (!session.automatic_turn()) throw UsageError("play_out needs automatic controllers on both sides");
    session.engine_move();
  }
}

}  // namespace xmcts
