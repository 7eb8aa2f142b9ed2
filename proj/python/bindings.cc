// Python bindings. Structured values cross the boundary as JSON text; the
// package's __init__ turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xmcts/errors.h"
#include "xmcts/json_io.h"
#include "xmcts/match.h"
#include "xmcts/service.h"

namespace py = pybind11;
using namespace xmcts;

namespace {

std::string analyze_json(const std::string& game, const std::vector<std::string>& moves,
                         std::optional<std::string> candidate, std::optional<std::string> size,
                         const std::string& enh, std::int64_t iterations, std::uint64_t seed, int verbosity) {
  SessionConfig cfg;
  cfg.game = parse_game_kind(game);
  cfg.size = size ? parse_board_size(*size) : default_board_size(cfg.game);
  cfg.verbosity = verbosity;
  SearchConfig engine;
  engine.enh = parse_flags(enh);
  engine.iterations = iterations;
  engine.seed = seed;
  cfg.analysis_engine = engine;
  GameSession session(cfg);
  for (const auto& m : moves) session.submit_move(m);
  std::optional<std::string_view> cand;
  if (candidate) cand = *candidate;
  py::gil_scoped_release release;
  return report_to_json(session.analyze(cand)).dump();
}

std::string explain_json(const std::string& snapshot, int verbosity) {
  return report_to_json(explain(snapshot_from_json(Json::parse(snapshot)), verbosity)).dump();
}

std::vector<std::string> legal(const std::string& game, const std::vector<std::string>& moves,
                               std::optional<std::string> size) {
  const GameKind kind = parse_game_kind(game);
  GameState s = initial_state(kind, size ? parse_board_size(*size) : default_board_size(kind));
  for (const auto& m : moves) s = apply(s, find_move(s, m));
  std::vector<std::string> out;
  for (const auto& m : legal_moves(s)) out.push_back(m.notation);
  return out;
}

}  // namespace

PYBIND11_MODULE(_xmcts, m) {
  m.doc() = "Explainable MCTS engine";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IllegalMoveError>(m, "IllegalMoveError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_RuntimeError);

  m.def("legal_moves", &legal, py::arg("game"), py::arg("moves") = std::vector<std::string>{},
        py::arg("size") = py::none());
  m.def("analyze_json", &analyze_json, py::arg("game"), py::arg("moves") = std::vector<std::string>{},
        py::arg("candidate") = py::none(), py::arg("size") = py::none(), py::arg("enh") = "solver",
        py::arg("iterations") = 1000, py::arg("seed") = 0, py::arg("verbosity") = 2);
  m.def("explain_json", &explain_json, py::arg("snapshot"), py::arg("verbosity") = 2);
  m.def("to_probability", &to_probability);
  m.def("format_percent", &format_percent);

  py::class_<Service>(m, "Service")
      .def(py::init<>())
      .def(
          "handle",
          [](Service& s, const std::string& method, const std::string& path, const std::string& body) {
            HttpResponse r;
            {
              py::gil_scoped_release release;
              r = s.handle(method, path, body);
            }
            return py::make_tuple(r.status, r.body.dump());
          },
          py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("session_count", &Service::session_count);
}
