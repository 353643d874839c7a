#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avlab/engine.hpp"
#include "avlab/hypergraph.hpp"
#include "avlab/permutability.hpp"
#include "avlab/set_partition.hpp"
#include "avlab/tuples.hpp"

namespace avlab::cli {

namespace detail {

inline double round_places(double x, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(x * scale) / scale;
}

inline std::string fixed_places(double x, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << x;
  return os.str();
}

struct Payload {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::vector<std::string> plain;
  std::string csv;
};

inline std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  if (text.empty()) return out;
  for (const auto token : avlab::detail::split(text, ','))
    out.push_back(avlab::detail::parse_int(token, what));
  return out;
}

}  // namespace detail

/**
 * Runs one CLI invocation (arguments without the program name) against the
 * given streams. Exit codes: 0 success, 2 parse/validation error, 3 resource
 * limit, 1 internal error. Plain output is documented per subcommand in the
 * README; --json wraps the result in a one-line envelope, --csv applies to
 * the sequence-shaped commands.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using nlohmann::json;
  const auto started = std::chrono::steady_clock::now();

  bool want_json = false, want_csv = false;
  std::string cache_dir;
  int threads = 1;
  std::uint64_t seed = 7;

  CLI::App app{"Exact enumeration and search for pattern avoidance in set partitions,\n"
               "parallel permutation tuples, and ordered hypergraphs."};
  app.name("avoidance-lab");
  app.require_subcommand(1);
  app.add_flag("--json", want_json, "Emit a one-line JSON envelope");
  app.add_flag("--csv", want_csv, "Emit CSV (sequence-shaped commands only)");
  app.add_option("--cache-dir", cache_dir,
                 "Count cache directory (else AVOIDANCE_LAB_CACHE)");
  app.add_option("--threads", threads, "Worker threads for counting commands")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized commands");

  detail::Payload payload;

  auto make_cache = [&]() -> std::optional<CountCache> {
    if (const auto dir = CountCache::resolve_dir(cache_dir)) return CountCache(*dir);
    return std::nullopt;
  };

  {
    auto* sub = app.add_subcommand("standardize", "Canonical form of a set partition");
    auto text = std::make_shared<std::string>();
    sub->add_option("partition", *text, "Partition text")->required();
    sub->fallthrough();
    sub->callback([&, text] {
      payload.command = "standardize";
      payload.inputs["partition"] = *text;
      const auto canonical = render(parse_partition(*text));
      payload.result["canonical"] = canonical;
      payload.plain.push_back(canonical);
    });
  }
  {
    auto* sub = app.add_subcommand("contains", "Klazar containment of set partitions");
    auto host = std::make_shared<std::string>();
    auto pattern = std::make_shared<std::string>();
    sub->add_option("host", *host, "Host partition")->required();
    sub->add_option("pattern", *pattern, "Pattern partition")->required();
    sub->fallthrough();
    sub->callback([&, host, pattern] {
      payload.command = "contains";
      payload.inputs["host"] = *host;
      payload.inputs["pattern"] = *pattern;
      const bool hit = contains_partition(parse_partition(*host), parse_partition(*pattern));
      payload.result["contains"] = hit;
      payload.plain.push_back(hit ? "true" : "false");
    });
  }
  {
    auto* sub = app.add_subcommand("contains-tuple", "Parallel containment of permutation tuples");
    auto host = std::make_shared<std::string>();
    auto pattern = std::make_shared<std::string>();
    sub->add_option("host", *host, "Host tuple, e.g. 2413|3142")->required();
    sub->add_option("pattern", *pattern, "Pattern tuple")->required();
    sub->fallthrough();
    sub->callback([&, host, pattern] {
      payload.command = "contains-tuple";
      payload.inputs["host"] = *host;
      payload.inputs["pattern"] = *pattern;
      const bool hit = contains_parallel(parse_tuple(*host), parse_tuple(*pattern));
      payload.result["contains"] = hit;
      payload.plain.push_back(hit ? "true" : "false");
    });
  }
  {
    auto* sub = app.add_subcommand("contains-hg", "Ordered hypergraph containment");
    auto g = std::make_shared<std::string>();
    auto h = std::make_shared<std::string>();
    sub->add_option("host", *g, "Host hypergraph, e.g. 1,4;2,5,6;3")->required();
    sub->add_option("pattern", *h, "Pattern hypergraph")->required();
    sub->fallthrough();
    sub->callback([&, g, h] {
      payload.command = "contains-hg";
      payload.inputs["g"] = *g;
      payload.inputs["h"] = *h;
      const bool hit = contains_hypergraph(parse_hypergraph(*g), parse_hypergraph(*h));
      payload.result["contains"] = hit;
      payload.plain.push_back(hit ? "true" : "false");
    });
  }
  {
    auto* sub = app.add_subcommand("permutability", "Permutability of a set partition");
    auto text = std::make_shared<std::string>();
    auto witness = std::make_shared<bool>(false);
    sub->add_option("partition", *text, "Partition text")->required();
    sub->add_flag("--witness", *witness, "Also print a minimum interval cover");
    sub->fallthrough();
    sub->callback([&, text, witness] {
      payload.command = "permutability";
      payload.inputs["partition"] = *text;
      payload.inputs["witness"] = *witness;
      const auto p = parse_partition(*text);
      const auto cover = min_interval_cover(p);
      const int pm = std::max(0, cover.count() - 1);
      payload.result["pm"] = pm;
      payload.plain.push_back(std::to_string(pm));
      if (*witness) {
        payload.result["witness"] = render(cover);
        payload.plain.push_back("witness=" + render(cover));
      }
    });
  }
  {
    auto* sub = app.add_subcommand("pm-dist", "Permutability distribution over all partitions of [n]");
    auto n = std::make_shared<int>(0);
    sub->add_option("--n", *n, "Ground-set size")->required();
    sub->fallthrough();
    sub->callback([&, n] {
      payload.command = "pm-dist";
      payload.inputs["n"] = *n;
      const auto dist = pm_distribution(*n);
      payload.result["distribution"] = json::array();
      payload.csv = "pm,count\n";
      for (const auto& [pm, count] : dist) {
        payload.result["distribution"].push_back({{"count", count}, {"pm", pm}});
        payload.plain.push_back(std::to_string(pm) + " " + std::to_string(count));
        payload.csv += std::to_string(pm) + "," + std::to_string(count) + "\n";
      }
    });
  }
  {
    auto* sub = app.add_subcommand("count", "Count partitions of [n] avoiding a pattern");
    auto pattern = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto no_singletons = std::make_shared<bool>(false);
    sub->add_option("--pattern", *pattern, "Pattern partition")->required();
    sub->add_option("--n", *n, "Ground-set size")->required();
    sub->add_flag("--no-singletons", *no_singletons, "Count only partitions with all blocks >= 2");
    sub->fallthrough();
    sub->callback([&, pattern, n, no_singletons] {
      payload.command = "count";
      payload.inputs["n"] = *n;
      payload.inputs["no_singletons"] = *no_singletons;
      payload.inputs["pattern"] = *pattern;
      auto cache = make_cache();
      CountOptions opt;
      opt.no_singletons = *no_singletons;
      opt.threads = threads;
      opt.cache = cache ? &*cache : nullptr;
      const BigInt value = count_avoiders(parse_partition(*pattern), *n, opt);
      payload.result["value"] = value.str();
      payload.plain.push_back(value.str());
    });
  }
  {
    auto* sub = app.add_subcommand("seq", "Avoidance sequence B_1..B_nmax for a pattern");
    auto pattern = std::make_shared<std::string>();
    auto nmax = std::make_shared<int>(0);
    sub->add_option("--pattern", *pattern, "Pattern partition")->required();
    sub->add_option("--nmax", *nmax, "Largest ground-set size")->required();
    sub->fallthrough();
    sub->callback([&, pattern, nmax] {
      payload.command = "seq";
      payload.inputs["nmax"] = *nmax;
      payload.inputs["pattern"] = *pattern;
      auto cache = make_cache();
      CountOptions opt;
      opt.threads = threads;
      opt.cache = cache ? &*cache : nullptr;
      const auto records = avoidance_sequence(parse_partition(*pattern), *nmax, opt);
      payload.result["values"] = json::array();
      payload.csv = "n,value\n";
      for (const auto& rec : records) {
        payload.result["values"].push_back({{"n", rec.n}, {"value", rec.value.str()}});
        payload.plain.push_back(std::to_string(rec.n) + " " + rec.value.str());
        payload.csv += std::to_string(rec.n) + "," + rec.value.str() + "\n";
      }
    });
  }
  {
    auto* sub = app.add_subcommand("count-tuples", "Count d-tuples over S_n avoiding a tuple pattern");
    auto pattern = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    sub->add_option("--pattern", *pattern, "Pattern tuple, e.g. 12|21")->required();
    sub->add_option("--n", *n, "Permutation size")->required();
    sub->fallthrough();
    sub->callback([&, pattern, n] {
      payload.command = "count-tuples";
      payload.inputs["n"] = *n;
      payload.inputs["pattern"] = *pattern;
      const auto tuple = parse_tuple(*pattern);
      const std::string key = render(tuple);
      auto cache = make_cache();
      std::optional<BigInt> value;
      if (cache) value = cache->lookup(CountKind::tuple_avoiders, key, *n);
      if (!value) {
        TupleCountOptions opt;
        opt.threads = threads;
        value = count_tuple_avoiders(tuple, *n, opt);
        if (cache) cache->store(CountKind::tuple_avoiders, key, *n, *value);
      }
      payload.result["value"] = value->str();
      payload.plain.push_back(value->str());
    });
  }
  {
    auto* sub = app.add_subcommand("antichain-prob",
                                   "Monte Carlo antichain probability q_d(n) of a random (d+1)-dimensional order");
    auto d = std::make_shared<int>(0);
    auto n = std::make_shared<int>(0);
    auto samples = std::make_shared<std::int64_t>(0);
    sub->add_option("--d", *d, "Tuple arity")->required();
    sub->add_option("--n", *n, "Permutation size")->required();
    sub->add_option("--samples", *samples, "Sample count")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->fallthrough();
    sub->callback([&, d, n, samples] {
      payload.command = "antichain-prob";
      payload.inputs["d"] = *d;
      payload.inputs["n"] = *n;
      payload.inputs["samples"] = *samples;
      payload.inputs["seed"] = seed;
      const auto est = antichain_probability(*d, *n, *samples, seed, threads);
      payload.result["estimate"] = detail::round_places(est.estimate, 8);
      payload.result["samples"] = est.samples;
      payload.result["seed"] = est.seed;
      payload.result["standard_error"] = detail::round_places(est.standard_error, 8);
      payload.plain.push_back("estimate=" + detail::fixed_places(est.estimate, 6) +
                              " se=" + detail::fixed_places(est.standard_error, 6) +
                              " samples=" + std::to_string(est.samples) +
                              " seed=" + std::to_string(est.seed));
    });
  }
  {
    auto* sub = app.add_subcommand("contract", "Interval contraction of an ordered hypergraph");
    auto hg = std::make_shared<std::string>();
    auto s = std::make_shared<int>(0);
    sub->add_option("--hg", *hg, "Hypergraph text")->required();
    sub->add_option("--s", *s, "Number of intervals")->required();
    sub->fallthrough();
    sub->callback([&, hg, s] {
      payload.command = "contract";
      payload.inputs["hg"] = *hg;
      payload.inputs["s"] = *s;
      const auto rep = interval_contract_report(parse_hypergraph(*hg), *s);
      payload.result["contracted"] = render(rep.contracted);
      payload.result["multiplicity"] = json::array();
      payload.plain.push_back(render(rep.contracted));
      for (const auto& [edge, count] : rep.multiplicity) {
        std::string text;
        for (std::size_t i = 0; i < edge.size(); ++i)
          text += (i ? "," : "") + std::to_string(edge[i]);
        payload.result["multiplicity"].push_back({{"count", count}, {"edge", text}});
        payload.plain.push_back(text + " x" + std::to_string(count));
      }
    });
  }
  {
    auto* sub = app.add_subcommand("project", "Projection of a uniform hypergraph");
    auto hg = std::make_shared<std::string>();
    auto drop = std::make_shared<std::string>();
    sub->add_option("--hg", *hg, "Hypergraph text")->required();
    sub->add_option("--drop", *drop, "Comma-separated positions to delete")->required();
    sub->fallthrough();
    sub->callback([&, hg, drop] {
      payload.command = "project";
      payload.inputs["drop"] = *drop;
      payload.inputs["hg"] = *hg;
      const auto projected =
          project(parse_hypergraph(*hg), detail::parse_int_list(*drop, "position"));
      payload.result["projected"] = render(projected);
      payload.plain.push_back(render(projected));
    });
  }
  {
    auto* sub = app.add_subcommand("max-weight",
                                   "Branch-and-bound maximum-weight hypergraph on [n] avoiding H");
    auto hg = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto budget = std::make_shared<std::uint64_t>(0);
    auto uniform = std::make_shared<int>(0);
    sub->add_option("--hg", *hg, "Pattern hypergraph H")->required();
    sub->add_option("--n", *n, "Ground-set size")->required();
    sub->add_option("--budget", *budget, "Node-expansion budget")->required();
    sub->add_option("--uniform", *uniform, "Restrict candidate edges to this size");
    sub->fallthrough();
    sub->callback([&, hg, n, budget, uniform] {
      payload.command = "max-weight";
      payload.inputs["budget"] = *budget;
      payload.inputs["hg"] = *hg;
      payload.inputs["n"] = *n;
      payload.inputs["uniform"] = *uniform;
      const auto res = max_weight_avoiding(parse_hypergraph(*hg), *n, *budget, *uniform);
      payload.result["best"] = render(res.best);
      payload.result["exact"] = res.exact;
      payload.result["expanded"] = res.expanded;
      payload.result["weight"] = res.weight;
      payload.plain.push_back("weight=" + std::to_string(res.weight));
      payload.plain.push_back(std::string("exact=") + (res.exact ? "true" : "false"));
      payload.plain.push_back("expanded=" + std::to_string(res.expanded));
      payload.plain.push_back("best=" + render(res.best));
    });
  }
  {
    auto* sub = app.add_subcommand("certify-lower",
                                   "Certify the lower bound B'_n >= (n/d)!^{d-1} for a pattern");
    auto pattern = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    sub->add_option("--pattern", *pattern, "Pattern partition")->required();
    sub->add_option("--n", *n, "Ground-set size (must be a multiple of d)")->required();
    sub->fallthrough();
    sub->callback([&, pattern, n] {
      payload.command = "certify-lower";
      payload.inputs["n"] = *n;
      payload.inputs["pattern"] = *pattern;
      payload.inputs["seed"] = seed;
      const auto rep = lower_bound_certificate(parse_partition(*pattern), *n, seed);
      payload.result["certified_count"] = rep.certified_count.str();
      payload.result["d"] = rep.d;
      payload.result["exhaustive"] = rep.exhaustive;
      payload.result["m"] = rep.m;
      payload.result["stripped"] = rep.stripped;
      payload.result["verified_samples"] = rep.verified_samples;
      payload.plain.push_back(
          "d=" + std::to_string(rep.d) + " m=" + std::to_string(rep.m) +
          " certified=" + rep.certified_count.str() +
          " verified=" + std::to_string(rep.verified_samples) +
          (rep.exhaustive ? " exhaustive=true" : " exhaustive=false") +
          (rep.stripped ? " stripped=true" : " stripped=false"));
    });
  }
  {
    auto* sub = app.add_subcommand("classify", "Growth regime of the class avoiding a basis");
    auto basis = std::make_shared<std::string>();
    sub->add_option("--basis", *basis, "Semicolon-separated basis patterns")->required();
    sub->fallthrough();
    sub->callback([&, basis] {
      payload.command = "classify";
      payload.inputs["basis"] = *basis;
      std::vector<SetPartition> patterns;
      if (!basis->empty())
        for (const auto part : avlab::detail::split(*basis, ';'))
          patterns.push_back(parse_partition(part));
      const auto text = to_string(classify_class(patterns));
      payload.result["class"] = text;
      payload.plain.push_back(text);
    });
  }
  {
    auto* sub = app.add_subcommand("growth-fit",
                                   "Growth-exponent diagnostics of an avoidance sequence");
    auto pattern = std::make_shared<std::string>();
    auto nmax = std::make_shared<int>(0);
    sub->add_option("--pattern", *pattern, "Pattern partition")->required();
    sub->add_option("--nmax", *nmax, "Largest ground-set size")->required();
    sub->fallthrough();
    sub->callback([&, pattern, nmax] {
      payload.command = "growth-fit";
      payload.inputs["nmax"] = *nmax;
      payload.inputs["pattern"] = *pattern;
      auto cache = make_cache();
      CountOptions opt;
      opt.threads = threads;
      opt.cache = cache ? &*cache : nullptr;
      std::vector<BigInt> seq;
      for (const auto& rec : avoidance_sequence(parse_partition(*pattern), *nmax, opt))
        seq.push_back(rec.value);
      const auto est = growth_fit(seq);
      const std::string hint =
          est.d_hint == 0 ? "bell" : std::to_string(est.d_hint);
      payload.result["d_hint"] = hint;
      payload.result["extrapolated"] = detail::round_places(est.extrapolated, 4);
      payload.result["final"] = detail::round_places(est.final_alpha, 4);
      payload.result["per_n"] = json::array();
      payload.csv = "n,alpha\n";
      for (const auto& [n, alpha] : est.per_n) {
        payload.result["per_n"].push_back(
            {{"alpha", detail::round_places(alpha, 4)}, {"n", n}});
        payload.plain.push_back(std::to_string(n) + " " + detail::fixed_places(alpha, 4));
        payload.csv += std::to_string(n) + "," + detail::fixed_places(alpha, 4) + "\n";
      }
      payload.plain.push_back("final=" + detail::fixed_places(est.final_alpha, 4));
      payload.plain.push_back("extrapolated=" + detail::fixed_places(est.extrapolated, 4));
      payload.plain.push_back("d_hint=" + hint);
    });
  }

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("avoidance-lab");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (want_json && want_csv) throw BadParameter("choose at most one of --json/--csv");
    if (want_csv && payload.csv.empty())
      throw BadParameter("--csv applies only to sequence-shaped commands");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }

  if (want_json) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    nlohmann::json envelope;
    envelope["command"] = payload.command;
    envelope["inputs"] = payload.inputs;
    envelope["result"] = payload.result;
    envelope["elapsed_ms"] = elapsed;
    out << envelope.dump() << '\n';
  } else if (want_csv) {
    out << payload.csv;
  } else {
    for (const auto& line : payload.plain) out << line << '\n';
  }
  return 0;
}

}  // namespace avlab::cli
