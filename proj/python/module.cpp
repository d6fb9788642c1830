#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swarmforage/bench.hpp"
#include "swarmforage/comm.hpp"
#include "swarmforage/engine.hpp"
#include "swarmforage/suite.hpp"

namespace py = pybind11;
namespace sf = swarmforage;

namespace {

py::bytes packet_bytes(const sf::Packet& p) {
  const auto b = sf::encode(p);
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

sf::Packet packet_from(const py::bytes& data) {
  const std::string s = data;
  return sf::decode(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

py::dict result_dict(const sf::AggregateResult& r) {
  py::dict d;
  d["experiment"] = r.experiment;
  d["controller"] = std::string(sf::to_string(r.controller));
  d["beta_send"] = r.beta_send;
  d["beta_receive"] = r.beta_receive;
  d["replicates"] = r.replicates;
  d["seed_base"] = r.seed_base;
  d["mean_blocks"] = r.mean_blocks;
  d["mean_inaccuracies"] = r.mean_inaccuracies;
  d["sd_blocks"] = r.sd_blocks;
  d["sd_inaccuracies"] = r.sd_inaccuracies;
  d["performance"] = r.performance;
  d["runs"] = r.runs;
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid-world swarm foraging simulator";

  py::register_exception<sf::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<sf::DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<sf::EncodeError>(m, "EncodeError", PyExc_ValueError);

  py::enum_<sf::Controller>(m, "Controller")
      .value("UTILITY", sf::Controller::Utility)
      .value("RCS", sf::Controller::RandomSelection)
      .value("CRW", sf::Controller::RandomWalk);

  py::enum_<sf::DecayForm>(m, "DecayForm").value("RATE", sf::DecayForm::Rate).value("LITERAL", sf::DecayForm::Literal);

  py::class_<sf::Packet>(m, "Packet")
      .def(py::init([](int x, int y, int state, int entity_id, int pheromone_q, int reserved) {
             auto byte = [](int v, const char* name) {
               if (v < 0 || v > 255) throw py::value_error(std::string(name) + " must fit in one byte");
               return static_cast<std::uint8_t>(v);
             };
             return sf::Packet{byte(x, "x"), byte(y, "y"), byte(state, "state"), byte(reserved, "reserved"),
                               byte(entity_id, "entity_id"), byte(pheromone_q, "pheromone_q")};
           }),
           py::arg("x"), py::arg("y"), py::arg("state"), py::arg("entity_id") = 0, py::arg("pheromone_q") = 0,
           py::arg("reserved") = 0)
      .def_readwrite("x", &sf::Packet::x)
      .def_readwrite("y", &sf::Packet::y)
      .def_readwrite("state", &sf::Packet::state_code)
      .def_readwrite("reserved", &sf::Packet::reserved)
      .def_readwrite("entity_id", &sf::Packet::entity_id)
      .def_readwrite("pheromone_q", &sf::Packet::pheromone_q)
      .def(py::self == py::self)
      .def("__repr__", [](const sf::Packet& p) {
        std::ostringstream os;
        os << "Packet(x=" << int(p.x) << ", y=" << int(p.y) << ", state=" << int(p.state_code)
           << ", entity_id=" << int(p.entity_id) << ", pheromone_q=" << int(p.pheromone_q) << ")";
        return os.str();
      });

  m.def("encode", &packet_bytes, py::arg("packet"), "Serialize a packet to its 6 wire bytes.");
  m.def("decode", &packet_from, py::arg("data"));
  m.def("decode_hex", [](const std::string& hex) { return sf::decode(sf::parse_hex(hex)); }, py::arg("hex"));
  m.def("quantize_pheromone", &sf::quantize_pheromone, py::arg("tau"), py::arg("ceiling"));
  m.def("dequantize_pheromone", &sf::dequantize_pheromone, py::arg("q"), py::arg("ceiling"));
  m.def(
      "pheromone_ceiling",
      [](double rho, sf::DecayForm form) {
        sf::PheromoneParams p;
        p.rho = rho;
        p.form = form;
        return p.ceiling();
      },
      py::arg("rho") = 0.001, py::arg("form") = sf::DecayForm::Rate);
  m.def("performance", &sf::performance, py::arg("blocks"), py::arg("inaccuracies"));

  py::class_<sf::RunMetrics>(m, "RunMetrics")
      .def_readonly("blocks_collected", &sf::RunMetrics::blocks_collected)
      .def_readonly("inaccuracies", &sf::RunMetrics::inaccuracies)
      .def_readonly("inaccuracy_series", &sf::RunMetrics::inaccuracy_series)
      .def_readonly("performance", &sf::RunMetrics::performance)
      .def_readonly("packets_sent", &sf::RunMetrics::packets_sent);

  m.def(
      "run_simulation",
      [](sf::Controller controller, double beta_send, double beta_receive, std::uint64_t seed, int ticks,
         bool paper_scale) {
        sf::SimConfig cfg = paper_scale ? sf::paper_scale_config() : sf::desk_scale_config();
        cfg.controller = controller;
        cfg.comm.beta_send = beta_send;
        cfg.comm.beta_receive = beta_receive;
        cfg.seed = seed;
        if (ticks > 0) cfg.ticks = ticks;
        py::gil_scoped_release release;
        return sf::run_simulation(cfg);
      },
      py::arg("controller") = sf::Controller::Utility, py::arg("beta_send") = 0.6, py::arg("beta_receive") = 0.6,
      py::arg("seed") = 1, py::arg("ticks") = 0, py::arg("paper_scale") = false,
      "One run at desk scale (or the paper-scale preset). ticks=0 keeps the preset length.");

  m.def(
      "run_suite",
      [](const std::string& yaml, std::optional<int> replicates, std::optional<std::uint64_t> seed_base,
         std::optional<int> ticks, unsigned threads) {
        sf::Suite suite = sf::parse_suite(yaml);
        if (replicates) suite.replicates = *replicates;
        if (seed_base) suite.seed_base = *seed_base;
        if (ticks) suite.base.ticks = *ticks;
        std::vector<sf::AggregateResult> results;
        {
          py::gil_scoped_release release;
          results = sf::run_matrix(suite.expand(), threads);
        }
        std::ostringstream csv;
        sf::write_summary_csv(csv, results);
        py::list rows;
        for (const auto& r : results) rows.append(result_dict(r));
        return py::make_tuple(rows, csv.str());
      },
      py::arg("yaml") = "", py::arg("replicates") = py::none(), py::arg("seed_base") = py::none(),
      py::arg("ticks") = py::none(), py::arg("threads") = 1,
      "Run a suite given as YAML text (empty = default suite). Returns (rows, summary_csv).");
}
