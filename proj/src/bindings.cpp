#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "faidlab/alphabet.hpp"
#include "faidlab/analysis.hpp"
#include "faidlab/decoder.hpp"
#include "faidlab/sim.hpp"
#include "faidlab/tanner_graph.hpp"

namespace py = pybind11;
using namespace faidlab;

namespace {

ChannelValue channel_from_int(int y) {
  if (y == 1) return ChannelValue::PlusC;
  if (y == -1) return ChannelValue::MinusC;
  throw std::invalid_argument("channel value must be +1 or -1");
}

MessageLevel level_from_int(int m) {
  if (!level_in_range(m)) throw std::invalid_argument("message level out of range [-3,3]");
  return static_cast<MessageLevel>(m);
}

std::vector<std::uint8_t> word_from_list(const std::vector<int>& bits) {
  std::vector<std::uint8_t> word(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("bits must be 0 or 1");
    word[i] = static_cast<std::uint8_t>(bits[i]);
  }
  return word;
}

DfaidConfig make_config(int nd, int max_iters, int round_iters) {
  DfaidConfig cfg{nd, round_iters, max_iters};
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_faidlab, m) {
  m.doc() = "7-level finite-alphabet iterative decoding laboratory";

  // Node-local update functions.
  m.def(
      "vn_update",
      [](int m1, int m2, int y) {
        return static_cast<int>(vn_update(level_from_int(m1), level_from_int(m2),
                                          channel_from_int(y)));
      },
      py::arg("m1"), py::arg("m2"), py::arg("y"),
      "Variable-node update on the two extrinsic messages; y is +1 or -1.");
  m.def(
      "cn_update",
      [](const std::vector<int>& msgs) {
        std::vector<MessageLevel> levels;
        levels.reserve(msgs.size());
        for (int v : msgs) levels.push_back(level_from_int(v));
        return static_cast<int>(cn_update(levels));
      },
      py::arg("msgs"), "Check-node update over the extrinsic messages.");
  m.def(
      "vn_update_decimated",
      [](int m1, int m2, int y, int flag) {
        if (flag < -1 || flag > 1) throw std::invalid_argument("flag must be -1, 0 or 1");
        return static_cast<int>(vn_update_decimated(level_from_int(m1), level_from_int(m2),
                                                    channel_from_int(y),
                                                    static_cast<DecimationFlag>(flag)));
      },
      py::arg("m1"), py::arg("m2"), py::arg("y"), py::arg("flag"));
  m.def(
      "decimation_decide",
      [](const std::vector<int>& msgs, int y) {
        if (msgs.size() != 3) throw std::invalid_argument("expected exactly 3 messages");
        return static_cast<int>(decimation_decide(level_from_int(msgs[0]),
                                                  level_from_int(msgs[1]),
                                                  level_from_int(msgs[2]),
                                                  channel_from_int(y)));
      },
      py::arg("msgs"), py::arg("y"));
  m.def(
      "decide_bit",
      [](const std::vector<int>& msgs, int y, int flag) {
        if (msgs.size() != 3) throw std::invalid_argument("expected exactly 3 messages");
        if (flag < -1 || flag > 1) throw std::invalid_argument("flag must be -1, 0 or 1");
        return decide_bit(level_from_int(msgs[0]), level_from_int(msgs[1]),
                          level_from_int(msgs[2]), channel_from_int(y),
                          static_cast<DecimationFlag>(flag));
      },
      py::arg("msgs"), py::arg("y"), py::arg("flag") = 0);

  py::class_<TannerGraph>(m, "TannerGraph")
      .def_static("from_alist", [](const std::string& text) { return parse_alist(text); },
                  py::arg("text"))
      .def_static("from_adjacency",
                  [](int check_count, const std::vector<std::vector<int>>& vn_adj) {
                    return TannerGraph::from_variable_adjacency(check_count, vn_adj);
                  },
                  py::arg("check_count"), py::arg("vn_adj"))
      .def_property_readonly("n", &TannerGraph::variable_count)
      .def_property_readonly("m", &TannerGraph::check_count)
      .def_property_readonly("edges", &TannerGraph::edge_count)
      .def("var_checks", [](const TannerGraph& g, int v) { return g.var_checks(v); },
           py::arg("v"))
      .def("check_vars", [](const TannerGraph& g, int c) { return g.check_vars(c); },
           py::arg("c"))
      .def("to_alist", [](const TannerGraph& g) { return serialize_alist(g); })
      .def("girth",
           [](const TannerGraph& g) -> py::object {
             const auto gth = girth(g);
             if (!gth) return py::none();
             return py::int_(*gth);
           })
      .def("left_degree",
           [](const TannerGraph& g) -> py::object {
             const auto d = g.left_degree();
             if (!d) return py::none();
             return py::int_(*d);
           })
      .def("rank", [](const TannerGraph& g) { return gf2_rank(g); })
      .def("codeword_basis", [](const TannerGraph& g) { return gf2_nullspace_basis(g); })
      .def("eight_cycles",
           [](const TannerGraph& g, long long limit) {
             std::vector<std::pair<std::array<int, 4>, std::array<int, 4>>> out;
             for (const auto& c : enumerate_8cycles(g, limit)) {
               out.emplace_back(c.vnodes, c.cnodes);
             }
             return out;
           },
           py::arg("limit") = -1)
      .def("__repr__", [](const TannerGraph& g) {
        return "TannerGraph(n=" + std::to_string(g.variable_count()) +
               ", m=" + std::to_string(g.check_count()) + ")";
      });

  m.def("tanner155", &construct_tanner_155, "The (155,93) quasi-cyclic code.");

  py::class_<DecimationEvent>(m, "DecimationEvent")
      .def_readonly("iteration", &DecimationEvent::iteration)
      .def_readonly("node", &DecimationEvent::node)
      .def_property_readonly("flag",
                             [](const DecimationEvent& e) { return static_cast<int>(e.flag); })
      .def("__repr__", [](const DecimationEvent& e) {
        return "DecimationEvent(iter=" + std::to_string(e.iteration) +
               ", node=" + std::to_string(e.node) + ", flag=" + std::to_string(e.flag) + ")";
      });

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("converged", &DecodeResult::converged)
      .def_readonly("iterations_used", &DecodeResult::iterations_used)
      .def_property_readonly("codeword",
                             [](const DecodeResult& r) {
                               return std::vector<int>(r.codeword.begin(), r.codeword.end());
                             })
      .def_readonly("decimation_events", &DecodeResult::decimation_events)
      .def_readonly("residual_errors", &DecodeResult::residual_errors)
      .def("__repr__", [](const DecodeResult& r) {
        return std::string("DecodeResult(converged=") + (r.converged ? "True" : "False") +
               ", iterations=" + std::to_string(r.iterations_used) + ")";
      });

  py::class_<DecodeTrace>(m, "DecodeTrace")
      .def_property_readonly("iterations",
                             [](const DecodeTrace& t) { return t.records.size(); })
      .def("to_jsonl", [](const DecodeTrace& t) { return trace_to_jsonl(t); })
      .def("new_decimations", [](const DecodeTrace& t) {
        std::vector<DecimationEvent> events;
        for (const auto& rec : t.records) {
          events.insert(events.end(), rec.new_decimations.begin(), rec.new_decimations.end());
        }
        return events;
      });

  m.def(
      "faid_decode",
      [](const TannerGraph& g, const std::vector<int>& received, int max_iters) {
        return faid_decode(g, word_from_list(received), max_iters);
      },
      py::arg("graph"), py::arg("received"), py::arg("max_iters") = 100);
  m.def(
      "dfaid_decode",
      [](const TannerGraph& g, const std::vector<int>& received, int nd, int max_iters,
         int round_iters) {
        return dfaid_decode(g, word_from_list(received), make_config(nd, max_iters, round_iters));
      },
      py::arg("graph"), py::arg("received"), py::arg("nd") = 1, py::arg("max_iters") = 100,
      py::arg("round_iters") = 3);
  m.def(
      "bp_decode",
      [](const TannerGraph& g, const std::vector<int>& received, double alpha, int max_iters) {
        return bp_decode(g, word_from_list(received), alpha, max_iters);
      },
      py::arg("graph"), py::arg("received"), py::arg("alpha") = 0.01, py::arg("max_iters") = 100);
  m.def(
      "run_with_trace",
      [](const TannerGraph& g, const std::string& decoder, const std::vector<int>& received,
         int nd, int max_iters, int round_iters, double bp_alpha) {
        return run_with_trace(decoder_kind_from_name(decoder), g, word_from_list(received),
                              make_config(nd, max_iters, round_iters), bp_alpha);
      },
      py::arg("graph"), py::arg("decoder"), py::arg("received"), py::arg("nd") = 1,
      py::arg("max_iters") = 100, py::arg("round_iters") = 3, py::arg("bp_alpha") = 0.01);

  py::class_<CertificationReport>(m, "CertificationReport")
      .def_readonly("weight", &CertificationReport::weight)
      .def_readonly("patterns_tested", &CertificationReport::patterns_tested)
      .def_readonly("max_iterations_observed", &CertificationReport::max_iterations_observed)
      .def_readonly("complete", &CertificationReport::complete)
      .def_property_readonly("failures",
                             [](const CertificationReport& r) {
                               std::vector<std::vector<int>> out;
                               for (const auto& f : r.failures) out.push_back(f.pattern.support);
                               return out;
                             })
      .def("to_json", [](const CertificationReport& r) {
        return certification_report_to_json(r);
      });

  m.def(
      "certify",
      [](const TannerGraph& g, const std::string& decoder, int weight, bool exhaustive,
         std::uint64_t samples, std::uint64_t seed, int nd, int max_iters, int threads) {
        const CertifyMode mode = exhaustive ? CertifyMode::Exhaustive()
                                            : CertifyMode::Sampled(seed, samples);
        return certify(g, decoder_kind_from_name(decoder), make_config(nd, max_iters, 3),
                       weight, mode, threads);
      },
      py::arg("graph"), py::arg("decoder"), py::arg("weight"), py::arg("exhaustive") = true,
      py::arg("samples") = 0, py::arg("seed") = 0, py::arg("nd") = 1,
      py::arg("max_iters") = 100, py::arg("threads") = 1);

  m.def(
      "audit_lemma1",
      [](const DecodeTrace& trace, const std::vector<int>& support) {
        std::vector<std::tuple<int, int, std::string>> out;
        for (const auto& v : audit_lemma1(trace, ErrorPattern{support})) {
          out.emplace_back(v.iteration, v.node, v.detail);
        }
        return out;
      },
      py::arg("trace"), py::arg("support"));
  m.def(
      "audit_lemma2",
      [](const DecodeTrace& trace, const std::vector<int>& support) {
        std::vector<std::tuple<int, int, std::string>> out;
        for (const auto& v : audit_lemma2(trace, ErrorPattern{support})) {
          out.emplace_back(v.iteration, v.node, v.detail);
        }
        return out;
      },
      py::arg("trace"), py::arg("support"));

  m.def(
      "verify_theorem1",
      [](const TannerGraph& g, long long limit, int nd, int max_iters) {
        const auto report = verify_theorem1(g, limit, make_config(nd, max_iters, 3));
        py::dict out;
        out["cycles_enumerated"] = report.cycles_enumerated;
        out["condition_true"] = report.condition_true;
        out["violations"] = report.violations;
        return out;
      },
      py::arg("graph"), py::arg("limit") = -1, py::arg("nd") = 4, py::arg("max_iters") = 100);

  m.def(
      "bsc_sample",
      [](double alpha, std::uint64_t seed, std::uint64_t frame_index, int n) {
        return bsc_sample(BscChannel{alpha, seed}, frame_index, n);
      },
      py::arg("alpha"), py::arg("seed"), py::arg("frame_index"), py::arg("n"));

  m.def(
      "fer_simulate",
      [](const TannerGraph& g, const std::string& decoder, const std::vector<double>& alphas,
         std::uint64_t seed, std::uint64_t max_frames, std::uint64_t min_frame_errors, int nd,
         int max_iters, int threads) {
        FerOptions options;
        options.cfg = make_config(nd, max_iters, 3);
        options.seed = seed;
        options.stop = {min_frame_errors, max_frames};
        options.threads = threads;
        std::vector<py::dict> out;
        for (const auto& r :
             fer_simulate(g, decoder_kind_from_name(decoder), alphas, options)) {
          py::dict d;
          d["alpha"] = r.alpha;
          d["decoder"] = decoder_kind_name(r.decoder);
          d["frames"] = r.frames;
          d["frame_errors"] = r.frame_errors;
          d["bit_errors"] = r.bit_errors;
          d["fer"] = r.fer;
          d["avg_iters"] = r.avg_iterations;
          d["seed"] = r.seed;
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("graph"), py::arg("decoder"), py::arg("alphas"), py::arg("seed") = 0,
      py::arg("max_frames") = 10000, py::arg("min_frame_errors") = 100, py::arg("nd") = 1,
      py::arg("max_iters") = 100, py::arg("threads") = 1);
}
