// Command-line front end: builds combinatorial manifold models, runs the
// verification checks, computes homology with optional caching, and
// benchmarks the reduction pipeline.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "topocat/theorems.hpp"

namespace fs = std::filesystem;
using namespace topocat;

namespace {

OpenSetRep parse_region(const ManifoldModel& model, const std::string& spec) {
  if (spec.empty() || spec == "all") return whole_model(model);
  std::vector<int> pts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 0 || v >= model.num_points())
      throw std::runtime_error("bad region spec: " + spec);
    pts.push_back(v);
  }
  return OpenSetRep::make(model, pts);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// worker pool with deterministic ordered emission

std::vector<CheckReport> run_jobs(const std::vector<std::function<CheckReport()>>& jobs,
                                  int nthreads) {
  std::vector<CheckReport> out(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = jobs[i]();
  };
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

int emit_reports(const std::vector<CheckReport>& reports, const std::string& format) {
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << (format == "machine" ? r.machine_line() : r.table_line()) << "\n";
    if (!r.passed()) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// content-addressed homology cache; corrupted entries are recomputed

struct Cache {
  fs::path dir;
  bool enabled = false;

  explicit Cache(const std::string& flag_dir) {
    std::string d = flag_dir;
    if (d.empty())
      if (const char* env = std::getenv("TOPOCAT_CACHE_DIR")) d = env;
    if (d.empty()) return;
    std::error_code ec;
    fs::create_directories(d, ec);
    dir = d;
    std::ofstream probe(dir / ".probe");
    if (ec || !probe) {
      std::cerr << "warning: cache directory not writable, caching disabled\n";
      return;
    }
    probe.close();
    fs::remove(dir / ".probe", ec);
    enabled = true;
  }

  std::optional<HomologySummary> lookup(const std::string& key) const {
    if (!enabled) return std::nullopt;
    std::ifstream in(dir / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      auto j = nlohmann::json::parse(in);
      if (j.at("key").get<std::string>() != key) throw std::runtime_error("key");
      HomologySummary h;
      h.valid_through = j.at("valid_through").get<int>();
      h.betti = j.at("betti").get<std::vector<long long>>();
      h.torsion = j.at("torsion").get<std::vector<std::vector<long long>>>();
      if (static_cast<int>(h.betti.size()) != h.valid_through + 1 ||
          h.torsion.size() != h.betti.size())
        throw std::runtime_error("shape");
      return h;
    } catch (...) {
      return std::nullopt;  // corrupted entry, caller recomputes and overwrites
    }
  }

  void store(const std::string& key, const HomologySummary& h) const {
    if (!enabled) return;
    nlohmann::ordered_json j;
    j["key"] = key;
    j["valid_through"] = h.valid_through;
    j["betti"] = h.betti;
    j["torsion"] = h.torsion;
    std::ofstream out(dir / (key + ".json"));
    out << j.dump() << "\n";
  }
};

SimplicialSet triangle_fixture() {
  return from_abstract_complex(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite categorical constructions over combinatorial manifold models"};
  app.require_subcommand(1);

  std::string model_spec, region_spec, subbasis = "full", format = "table";
  std::string cache_flag, check_name, input_path, fixture, coeff = "integer";
  int k = 1, p = 0, q = 1, max_degree = 1, jobs = 1, count = 1;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_spec, "model spec, e.g. cycle:6 or interval:4");
    cmd->add_option("--k", k, "maximum number of balls")->check(CLI::NonNegativeNumber);
    cmd->add_option("--p", p, "string length (inclusion strings)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--q", q, "string length (isotopy-equivalence strings)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--region", region_spec, "comma-separated points, default all");
    cmd->add_option("--subbasis", subbasis, "sub-basis spec, e.g. stride:2");
    cmd->add_option("--max-degree", max_degree, "top homology degree to compare")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--coeff", coeff, "integer | f2-first")
        ->check(CLI::IsMember({"integer", "f2-first"}));
    cmd->add_option("--seed", seed, "seed for all randomized instances");
    cmd->add_option("--count", count, "number of randomized instances")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "table | machine")
        ->check(CLI::IsMember({"table", "machine"}));
    cmd->add_option("--cache-dir", cache_flag,
                    "homology cache directory (or TOPOCAT_CACHE_DIR)");
  };

  auto* verify = app.add_subcommand("verify", "run a verification check");
  verify->add_option("check", check_name, "check to run")
      ->required()
      ->check(CLI::IsMember({"nerve-ak", "thomason", "fiber", "terminal-j",
                             "decomposition", "refinement", "bary", "suite"}));
  add_common(verify);

  auto* homology_cmd = app.add_subcommand("homology", "homology of a complex");
  add_common(homology_cmd);
  homology_cmd->add_option("--input", input_path, "serialized chain complex file");
  homology_cmd->add_option("--fixture", fixture, "built-in fixture")
      ->check(CLI::IsMember({"triangle"}));

  auto* bench = app.add_subcommand("bench", "time the reduction pipeline");
  add_common(bench);

  auto* config_cmd = app.add_subcommand("config-space", "configuration complex data");
  add_common(config_cmd);

  auto* nerve_cmd = app.add_subcommand("nerve", "string-poset nerve sizes");
  add_common(nerve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) {
      std::vector<std::function<CheckReport()>> work;
      auto bundle_for = [&](const std::string& spec, int kk) {
        auto m = ManifoldModel::parse(spec);
        return build_Bk(m, enumerate_balls(m), kk);
      };
      if (check_name == "nerve-ak") {
        auto m = ManifoldModel::parse(model_spec);
        int d = max_degree, kk = k;
        work.push_back([m, kk, d] { return verify_nerve_ak(m, kk, d); });
      } else if (check_name == "thomason") {
        for (int i = 0; i < count; ++i)
          work.push_back([=] { return verify_thomason_random(seed, i, max_degree); });
      } else if (check_name == "fiber") {
        for (int i = 0; i < count; ++i)
          work.push_back([=] { return verify_fiber_random(seed, i); });
      } else if (check_name == "terminal-j") {
        auto m = ManifoldModel::parse(model_spec);
        auto V = parse_region(m, region_spec);
        work.push_back([=] {
          return verify_homotopy_terminal_J(build_Bk(m, enumerate_balls(m), k), q, V);
        });
      } else if (check_name == "decomposition") {
        auto m = ManifoldModel::parse(model_spec);
        auto V = parse_region(m, region_spec);
        work.push_back([=] {
          return verify_grothendieck_decomposition(build_Bk(m, enumerate_balls(m), k),
                                                   p, V);
        });
      } else if (check_name == "refinement") {
        auto m = ManifoldModel::parse(model_spec);
        auto V = parse_region(m, region_spec);
        std::string sb = subbasis;
        work.push_back(
            [=] { return verify_refinement(m, k, p, V, sb, max_degree); });
      } else if (check_name == "bary") {
        work.push_back([=] { return verify_bary(seed, count); });
      } else {  // suite: fixed battery in deterministic parameter order
        auto C6 = ManifoldModel::parse("cycle:6");
        auto L6 = ManifoldModel::parse("interval:6");
        auto L4 = ManifoldModel::parse("interval:4");
        auto L3 = ManifoldModel::parse("interval:3");
        work.push_back([=] { return verify_nerve_ak(C6, 1, 1); });
        work.push_back([=] { return verify_nerve_ak(L6, 2, 1); });
        for (int i = 0; i < 5; ++i)
          work.push_back([=] { return verify_thomason_random(seed, i, 2); });
        for (int i = 0; i < 5; ++i)
          work.push_back([=] { return verify_fiber_random(seed, i); });
        work.push_back([=, &bundle_for] {
          return verify_homotopy_terminal_J(bundle_for("interval:4", 1), 1,
                                            whole_model(L4));
        });
        work.push_back([=, &bundle_for] {
          return verify_grothendieck_decomposition(bundle_for("interval:3", 1), 1,
                                                   whole_model(L3));
        });
        work.push_back(
            [=] { return verify_refinement(C6, 1, 0, whole_model(C6), "stride:2", 1); });
        work.push_back([=] { return verify_bary(seed, 1000); });
      }
      return emit_reports(run_jobs(work, jobs), format);
    }

    if (app.got_subcommand(homology_cmd)) {
      ChainComplex cc;
      if (!input_path.empty()) {
        std::ifstream in(input_path);
        if (!in) throw std::runtime_error("cannot read " + input_path);
        std::stringstream buf;
        buf << in.rdbuf();
        cc = ChainComplex::parse(buf.str());
      } else if (fixture == "triangle") {
        cc = normalized_chains(triangle_fixture(), 2);
      } else if (!model_spec.empty()) {
        auto m = ManifoldModel::parse(model_spec);
        auto bundle = build_Bk(m, enumerate_balls(m), k);
        cc = order_complex_chains(bundle.ak_poset(), max_degree + 1);
      } else {
        throw std::runtime_error("homology needs --input, --fixture or --model");
      }
      Cache cache(cache_flag);
      std::string key =
          hex64(fnv1a(cc.serialize() + "|deg=" + std::to_string(max_degree) +
                      "|coeff=" + coeff));
      auto hit = cache.lookup(key);
      HomologySummary h;
      if (hit) {
        h = *hit;
      } else {
        auto [red, log] = coreduce(cc);
        h = homology(red, std::min(max_degree, red.valid_through()));
        if (cc.complete && h.valid_through < max_degree) {
          while (h.valid_through < max_degree) {
            h.betti.push_back(0);
            h.torsion.push_back({});
            ++h.valid_through;
          }
        }
        cache.store(key, h);
      }
      std::vector<long long> f2;
      if (coeff == "f2-first") f2 = betti_f2(cc, std::min(max_degree, cc.valid_through()));
      if (format == "machine") {
        nlohmann::ordered_json j;
        j["v"] = 1;
        j["key"] = key;
        j["valid_through"] = h.valid_through;
        j["betti"] = h.betti;
        j["torsion"] = h.torsion;
        j["max_degree"] = max_degree;
        if (!f2.empty()) j["betti_f2"] = f2;
        std::cout << j.dump() << "\n";
      } else {
        for (int d = 0; d <= max_degree; ++d) {
          std::cout << "H_" << d << " = ";
          if (d > h.valid_through) {
            std::cout << "unknown (truncated)\n";
            continue;
          }
          std::cout << "Z^" << h.betti[d];
          for (long long t : h.torsion[d]) std::cout << " + Z/" << t;
          std::cout << "\n";
        }
        if (!f2.empty()) {
          std::cout << "F2 betti:";
          for (long long b : f2) std::cout << " " << b;
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(bench)) {
      std::uint64_t corpus_hash = fnv1a("");
      bool any_reduction = false;
      if (format == "table")
        std::cout << "instance cells_before cells_after chains_ms reduce_ms smith_ms\n";
      for (int i = 0; i < count; ++i) {
        auto inst = rnd::random_poset_diagram(rnd::instance_seed(seed, i), 5, 5);
        auto gr = grothendieck(inst->base, inst->F);
        auto t0 = std::chrono::steady_clock::now();
        auto cc = normalized_chains(nerve(gr.cat, 3), 3);
        auto t1 = std::chrono::steady_clock::now();
        corpus_hash ^= fnv1a(cc.serialize());
        auto [red, log] = coreduce(cc);
        auto t2 = std::chrono::steady_clock::now();
        auto h = homology(red, red.valid_through());
        auto t3 = std::chrono::steady_clock::now();
        auto ms = [](auto a, auto b) {
          return std::chrono::duration<double, std::milli>(b - a).count();
        };
        if (log.cells_after < log.cells_before) any_reduction = true;
        if (format == "machine") {
          nlohmann::ordered_json j;
          j["v"] = 1;
          j["instance"] = i;
          j["cells_before"] = log.cells_before;
          j["cells_after"] = log.cells_after;
          j["betti"] = h.betti;
          std::cout << j.dump() << "\n";
        } else {
          std::cout << i << " " << log.cells_before << " " << log.cells_after << " "
                    << ms(t0, t1) << " " << ms(t1, t2) << " " << ms(t2, t3) << "\n";
        }
      }
      std::cout << "corpus_hash " << hex64(corpus_hash) << "\n";
      if (count > 0 && format == "table")
        std::cout << "reduction " << (any_reduction ? "effective" : "trivial") << "\n";
      return 0;
    }

    if (app.got_subcommand(config_cmd)) {
      auto m = ManifoldModel::parse(model_spec);
      auto X = config_complex(m, k);
      auto cc = normalized_chains(X, X.top_dim);
      auto [red, log] = coreduce(cc);
      auto h = homology(red, red.valid_through());
      if (format == "machine") {
        nlohmann::ordered_json j;
        j["v"] = 1;
        j["model"] = m.spec();
        j["j"] = k;
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (int d = 0; d <= X.top_dim; ++d) cells.push_back(X.count(d));
        j["cells"] = cells;
        j["betti"] = h.betti;
        j["torsion"] = h.torsion;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "configuration complex of " << m.spec() << ", " << k
                  << " points\ncells:";
        for (int d = 0; d <= X.top_dim; ++d) std::cout << " " << X.count(d);
        std::cout << "\n" << h.to_string() << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(nerve_cmd)) {
      auto m = ManifoldModel::parse(model_spec);
      auto bundle = build_Bk(m, enumerate_balls(m), k);
      auto V = parse_region(m, region_spec);
      auto sp = build_AkBkp_poset(bundle, p, V);
      auto cc = order_complex_chains(sp.poset, max_degree + 1);
      if (format == "machine") {
        nlohmann::ordered_json j;
        j["v"] = 1;
        j["model"] = m.spec();
        j["k"] = k;
        j["p"] = p;
        j["objects"] = sp.chains.size();
        j["chain_ranks"] = cc.ranks;
        j["complete"] = cc.complete;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "string poset over " << m.spec() << " k=" << k << " p=" << p
                  << ": " << sp.chains.size() << " objects\nchain ranks:";
        for (long long r : cc.ranks) std::cout << " " << r;
        std::cout << (cc.complete ? "" : " (truncated)") << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
