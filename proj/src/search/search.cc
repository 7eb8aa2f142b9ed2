#include "xmcts/search.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "xmcts/errors.h"

namespace xmcts {

SearchNode::SearchNode(GameState s, int move_id, std::string move_notation)
    : state(std::move(s)), move(move_id), notation(std::move(move_notation)) {
  std::vector<int> ids;
  state.rules().generate_moves(state, ids);
  legal_count = static_cast<int>(ids.size());
  if (auto outcome = state.outcome()) {
    bounds = ScoreBounds::terminal(*outcome);
  } else {
    bounds = ScoreBounds::fresh();
  }
}

SearchNode& SearchNode::expand_next() {
  const auto ids = legal_move_ids(state);
  const int m = ids.at(children.size());
  GameState next = state;
  state.rules().play(next, m);
  children.push_back(std::make_unique<SearchNode>(std::move(next), m, state.rules().notation(state, m)));
  return *children.back();
}

SearchNode* SearchNode::find_child(int move_id) const {
  for (const auto& c : children) {
    if (c->move == move_id) return c.get();
  }
  return nullptr;
}

void SearchConfig::validate() const {
  if (!iterations && !time_ms) throw ConfigError("search needs an iteration or time budget");
  if (iterations && *iterations < 1) throw ConfigError("iteration budget must be >= 1");
  if (time_ms && *time_ms < 1) throw ConfigError("time budget must be >= 1 ms");
  if (!(exploration > 0.0)) throw ConfigError("exploration constant must be > 0");
  if (!(params.mast_temperature > 0.0)) throw ConfigError("MAST temperature must be > 0");
  if (params.nst_max_length < 1 || params.nst_max_length > 3) throw ConfigError("NST gram length must be in [1, 3]");
  if (params.nst_threshold < 1) throw ConfigError("NST visit threshold must be >= 1");
  if (params.nst_epsilon < 0.0 || params.nst_epsilon > 1.0) throw ConfigError("NST epsilon must be in [0, 1]");
  if (params.nst_dump_length < 1 || params.nst_dump_length > 3) throw ConfigError("NST dump length must be in [1, 3]");
  if (params.grave_ref_threshold < 0) throw ConfigError("GRAVE reference threshold must be >= 0");
  if (params.grave_bias < 0.0) throw ConfigError("GRAVE bias must be >= 0");
}

SearchNode& select_child(const SearchNode& n, const SearchConfig& cfg, const SearchNode* grave_ref) {
  std::vector<SearchNode*> candidates;
  if (cfg.enh.solver) {
    candidates = solved_filter(n);
  } else {
    for (const auto& c : n.children) candidates.push_back(c.get());
  }
  if (candidates.empty()) throw UsageError("select_child on a node without selectable children");
  for (SearchNode* c : candidates) {
    if (c->visits == 0) return *c;
  }
  const PlayerId p = n.mover();
  const double log_n = std::log(static_cast<double>(std::max<std::int64_t>(n.visits, 1)));
  const SearchNode& ref = grave_ref != nullptr ? *grave_ref : n;
  SearchNode* best = candidates.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (SearchNode* c : candidates) {
    const double exploit = cfg.enh.grave ? grave_value(*c, n, ref, cfg.params.grave_bias) : c->mean(p);
    const double value = exploit + cfg.exploration * std::sqrt(log_n / static_cast<double>(c->visits));
    if (value > best_value) {
      best_value = value;
      best = c;
    }
  }
  return *best;
}

GameOutcome playout(const GameState& s, const SearchConfig& cfg, const EnhancementTables& tables, Rng& rng,
                    std::vector<PlayedStep>& trace) {
  thread_local std::vector<int> moves;
  GameState cur = s;
  const Rules& rules = s.rules();
  const int cap = rules.playout_ply_cap();
  for (int plies = 0; !cur.is_terminal(); ++plies) {
    if (plies >= cap) return GameOutcome::draw();
    int m;
    if (cfg.enh.nst) {
      m = nst_policy(cur, tables.nst, cfg.params, rng, moves);
    } else if (cfg.enh.mast) {
      m = mast_policy(cur, tables.mast, cfg.params.mast_temperature, rng, moves);
    } else {
      rules.generate_moves(cur, moves);
      m = moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)];
    }
    trace.push_back({cur.to_move(), m});
    rules.play(cur, m);
  }
  return *cur.outcome();
}

void backpropagate(std::span<SearchNode* const> path, const GameOutcome& outcome, std::span<const PlayedStep> trace,
                   EnhancementTables& tables, const SearchConfig& cfg, PlayerId root_player,
                   std::span<const PlayedStep> context) {
  if (path.empty()) return;
  ++path.back()->playouts_started;
  for (SearchNode* node : path) {
    ++node->visits;
    node->reward_sum[0] += outcome.utilities[0];
    node->reward_sum[1] += outcome.utilities[1];
  }
  if (cfg.enh.solver) bounds_backprop(path);
  if (cfg.enh.grave) amaf_update(path, trace, outcome);
  if (cfg.enh.mast) tables.mast.update(trace, outcome);
  if (cfg.enh.nst) tables.nst.update(trace, outcome, context);
  if (cfg.enh.pn) pn_update(path, root_player, cfg.enh.solver);
}

MoveChoice final_move_choice(const SearchNode& root) {
  const PlayerId p = root.mover();
  const SearchNode* win = nullptr;
  const SearchNode* robust = nullptr;
  const SearchNode* loss = nullptr;
  for (const auto& owned : root.children) {
    const SearchNode* c = owned.get();
    if (c->visits == 0) continue;
    const int lo = c->bounds.lower_for(p);
    if (lo > 0) {
      if (win == nullptr || lo > win->bounds.lower_for(p) ||
          (lo == win->bounds.lower_for(p) && c->visits > win->visits)) {
        win = c;
      }
    } else if (c->bounds.upper_for(p) < 0) {
      if (loss == nullptr || lo > loss->bounds.lower_for(p) ||
          (lo == loss->bounds.lower_for(p) && c->visits > loss->visits)) {
        loss = c;
      }
    } else if (robust == nullptr || c->visits > robust->visits ||
               (c->visits == robust->visits && c->mean(p) > robust->mean(p))) {
      robust = c;
    }
  }
  if (win != nullptr) return {{win->move, win->notation}, ChoiceRationale::kProvenWin, win};
  if (robust != nullptr) return {{robust->move, robust->notation}, ChoiceRationale::kMostVisits, robust};
  if (loss != nullptr) return {{loss->move, loss->notation}, ChoiceRationale::kForcedLoss, loss};
  throw UsageError("final_move_choice: root has no visited children");
}

std::unique_ptr<SearchNode> advance_root(std::unique_ptr<SearchNode> tree, int played) {
  if (!tree) return nullptr;
  for (auto& c : tree->children) {
    if (c->move == played) return std::move(c);
  }
  return nullptr;
}

namespace {

const SearchNode* most_visited(const SearchNode& node) {
  const SearchNode* best = nullptr;
  for (const auto& c : node.children) {
    if (best == nullptr || c->visits > best->visits) best = c.get();
  }
  return best;
}

// Child whose proof realises the node's exact value.
const SearchNode* realising_child(const SearchNode& node) {
  const PlayerId p = node.mover();
  const SearchNode* best = nullptr;
  for (const auto& c : node.children) {
    if (!c->bounds.exact() || shift_ply(c->bounds.lower_for(p)) != node.bounds.lower_for(p)) continue;
    if (best == nullptr || c->visits > best->visits) best = c.get();
  }
  return best;
}

}  // namespace

std::vector<MoveRecord> principal_variation(const SearchNode& root, int max_plies) {
  std::vector<MoveRecord> line;
  const SearchNode* node = &root;
  while (static_cast<int>(line.size()) < max_plies && !node->is_terminal() && !node->children.empty()) {
    const SearchNode* next = node->bounds.exact() ? realising_child(*node) : nullptr;
    if (next == nullptr) next = most_visited(*node);
    line.push_back({next->move, next->notation});
    node = next;
  }
  return line;
}

TurnSnapshot make_snapshot(const SearchNode& root, const SearchConfig& cfg, const EnhancementTables& tables,
                           const MoveChoice& choice, std::int64_t iterations,
                           std::optional<double> previous_turn_score) {
  TurnSnapshot snap;
  const PlayerId p = root.mover();
  snap.game = std::string(game_name(root.state.kind()));
  snap.mover = p;
  snap.iterations_performed = iterations;
  snap.previous_turn_score = previous_turn_score;
  snap.rationale = choice.rationale;
  snap.features = cfg.enh;

  const auto ids = legal_move_ids(root.state);
  const auto recent = root.state.recent_moves();
  for (size_t i = 0; i < ids.size(); ++i) {
    const int id = ids[i];
    const SearchNode* child = i < root.children.size() ? root.children[i].get() : nullptr;
    MoveStats ms;
    ms.notation = child ? child->notation : root.state.rules().notation(root.state, id);
    if (child) {
      ms.visits = child->visits;
      ms.score = child->mean(p);
    }
    if (cfg.enh.grave) {
      const RewardStat* a = root.amaf.find(p, id);
      ms.amaf = a ? AmafView{a->count, a->mean()} : AmafView{};
    }
    if (cfg.enh.mast || cfg.enh.nst) {
      const RewardStat uni = cfg.enh.mast ? tables.mast.stat(p, id) : tables.nst.unigram(p, id);
      ms.ngrams.push_back({uni.count, uni.mean()});
      if (cfg.enh.nst) {
        const int dump_len = std::min(cfg.params.nst_dump_length, tables.nst.max_length());
        for (int n = 2; n <= dump_len; ++n) {
          NGramView view;
          if (recent.size() >= static_cast<size_t>(n - 1)) {
            std::vector<int> gram;
            for (size_t k = recent.size() - static_cast<size_t>(n - 1); k < recent.size(); ++k) {
              gram.push_back(recent[k].move);
            }
            gram.push_back(id);
            if (const RewardStat* st = tables.nst.find(p, gram)) view = {st->count, st->mean()};
          }
          ms.ngrams.push_back(view);
        }
      }
    }
    if (cfg.enh.solver) {
      if (child) {
        ms.bounds = BoundsView{child->bounds.pess(p), child->bounds.opt(p)};
        ms.solved = child->bounds.solved();
        if (ms.solved) {
          ms.solved_value = child->bounds.solved_value(p);
          ms.solved_distance_plies = ms.solved_value != 0.0 ? child->bounds.solved_distance() + 1 : 0;
        }
      } else {
        ms.bounds = BoundsView{};
      }
    }
    if (cfg.enh.pn) ms.pn = child ? PnView{child->pn.pn, child->pn.dn} : PnView{};
    if (child == choice.child) snap.selected_index = i;
    snap.move_stats.push_back(std::move(ms));
  }
  if (cfg.enh.pn) snap.root_pn = PnView{root.pn.pn, root.pn.dn};

  const SearchNode& sel = *choice.child;
  int max_plies = 4;
  if (cfg.enh.solver && sel.bounds.exact() && sel.bounds.lower != 0) max_plies = sel.bounds.solved_distance();
  for (auto& m : principal_variation(sel, max_plies)) snap.principal_variation.push_back(std::move(m.notation));
  return snap;
}

SearchResult search(const GameState& s, const SearchConfig& cfg, EnhancementTables& tables,
                    std::unique_ptr<SearchNode>& tree, std::optional<double> previous_turn_score) {
  cfg.validate();
  if (s.is_terminal()) throw UsageError("search called on a terminal state");
  if (!tree || !cfg.tree_reuse || !(tree->state == s)) tree = std::make_unique<SearchNode>(s);
  SearchNode& root = *tree;
  const PlayerId root_player = s.to_move();

  std::vector<PlayedStep> context;
  for (const auto& pm : s.recent_moves()) context.push_back({pm.player, pm.move});

  Rng rng(cfg.seed);
  std::vector<SearchNode*> path;
  std::vector<PlayedStep> trace;
  const auto start = std::chrono::steady_clock::now();
  auto has_visited_child = [&root] {
    return std::any_of(root.children.begin(), root.children.end(), [](const auto& c) { return c->visits > 0; });
  };

  std::int64_t iterations = 0;
  while (!(cfg.enh.solver && root.bounds.exact())) {
    if (cfg.iterations && iterations >= *cfg.iterations) break;
    if (iterations > 0 || has_visited_child()) {
      if (cfg.stop != nullptr && cfg.stop->load(std::memory_order_relaxed)) break;
      if (cfg.time_ms) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        if (elapsed.count() >= *cfg.time_ms) break;
      }
    }

    path.clear();
    trace.clear();
    path.push_back(&root);
    SearchNode* node = &root;
    const SearchNode* ref = &root;
    while (!node->is_terminal()) {
      if (cfg.enh.grave && node->visits >= cfg.params.grave_ref_threshold) ref = node;
      SearchNode* next = node->unexpanded() > 0 ? &node->expand_next() : &select_child(*node, cfg, ref);
      trace.push_back({node->mover(), next->move});
      path.push_back(next);
      const bool expanded = next->visits == 0;
      node = next;
      if (expanded) break;
    }
    const GameOutcome outcome = node->is_terminal() ? *node->state.outcome() : playout(node->state, cfg, tables, rng, trace);
    backpropagate(path, outcome, trace, tables, cfg, root_player, context);
    ++iterations;
  }

  const MoveChoice choice = final_move_choice(root);
  SearchResult result;
  result.selected = choice.move;
  result.iterations_performed = iterations;
  result.snapshot = make_snapshot(root, cfg, tables, choice, iterations, previous_turn_score);
  return result;
}

}  // namespace xmcts
