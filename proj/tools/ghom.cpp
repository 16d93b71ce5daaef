#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ghom/anticech.hpp"
#include "ghom/colouring.hpp"
#include "ghom/dad.hpp"
#include "ghom/errors.hpp"
#include "ghom/io.hpp"
#include "ghom/matui.hpp"
#include "ghom/runtime.hpp"
#include "ghom/smith.hpp"
#include "ghom/uf.hpp"

using namespace ghom;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kCap = 3, kVerify = 4 };

// Line-oriented report: header, inputs with hashes, results, optional timing.
class Report {
 public:
  Report(std::string command, bool deterministic)
      : command_(std::move(command)), deterministic_(deterministic), start_(std::chrono::steady_clock::now()) {
    out_ << "command: " << command_ << "\n";
  }

  std::string input(const std::string& role, const std::string& path) {
    std::string bytes = read_file(path);
    out_ << "input " << role << ": " << path << " sha256=" << sha256_hex(bytes) << "\n";
    return bytes;
  }
  std::ostream& line() { return out_; }

  void check(const std::string& what, bool ok, const std::string& detail = "") {
    out_ << (ok ? "PASS " : "FAIL ") << what;
    if (!ok && !detail.empty()) out_ << " FAIL(" << detail << ")";
    out_ << "\n";
    failed_ = failed_ || !ok;
  }

  void certificate(const std::string& what, const ChainMapCertificate& cert) {
    auto r = certify_homotopy(cert);
    std::string detail;
    if (!r.ok && r.discrepancy) {
      const auto& d = *r.discrepancy;
      detail = d.str();
      if (d.row < cert.target->dim(d.degree)) detail += " basis=" + cert.target->basis(d.degree)[d.row];
    }
    check(what + " [" + cert.claimed_identity + "]", r.ok, r.ok ? "" : (detail.empty() ? "unknown" : detail));
  }

  bool failed() const { return failed_; }

  int finish(int code = kOk) {
    if (!deterministic_) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
      out_ << "time_ms: " << ms << "\n";
    }
    std::cout << out_.str() << std::flush;
    if (code != kOk) return code;
    return failed_ ? kVerify : kOk;
  }

 private:
  std::string command_;
  bool deterministic_;
  std::chrono::steady_clock::time_point start_;
  std::ostringstream out_;
  bool failed_ = false;
};

std::string join_ids(const FiniteAmpleGroupoid& G, const std::vector<Arrow>& arrows) {
  std::string s;
  for (Arrow a : arrows) s += (s.empty() ? "" : " ") + G.id(a);
  return s;
}

struct Options {
  bool deterministic = false;
  unsigned threads = 0;
  int max_degree = 3;
  std::string groupoid, colouring, matrix, scale, metric, suite = "complex";
  int steps = 4;
  std::size_t cap = 0;
  int dmax = 3;
};

int cmd_homology(const Options& o) {
  Report r("homology", o.deterministic);
  auto G = parse_groupoid(r.input("groupoid", o.groupoid));
  r.line() << "max_degree: " << o.max_degree << "\n";
  auto C = matui_complex(G, o.max_degree + 1);
  for (int n = 0; n <= o.max_degree; ++n) r.line() << "H_" << n << " = " << homology(*C, n).str() << "\n";
  return r.finish();
}

int cmd_verify(const Options& o) {
  Report r("verify", o.deterministic);
  auto G = parse_groupoid(r.input("groupoid", o.groupoid));
  const int N = o.max_degree;
  r.line() << "suite: " << o.suite << "\nmax_degree: " << N << "\n";
  if (o.suite == "complex") {
    auto C = matui_complex(G, N + 1);
    for (int n = 0; n < N + 1; ++n) {
      auto dd = C->boundary(n) * C->boundary(n + 1);
      std::string witness;
      if (!dd.is_zero())
        for (std::size_t j = 0; j < dd.cols() && witness.empty(); ++j)
          dd.for_each_in_column(j, [&](std::size_t i, const Integer& v) {
            if (witness.empty() && !v.is_zero())
              witness = "degree=" + std::to_string(n + 1) + " basis=" + C->basis(n + 1)[j] + " row=" + std::to_string(i) + " entry=" + v.str();
          });
      r.check("boundary composite d_" + std::to_string(n) + " d_" + std::to_string(n + 1) + " = 0", dd.is_zero(), witness);
    }
    auto bar = bar_isomorphism(G, N);
    r.check("bar isomorphism inverse", bar.inverse, "A B or B A is not the identity");
    r.check("bar isomorphism chain maps", bar.chain_maps, "boundaries do not commute");
    for (int n = -1; n < N; ++n) {
      auto t = tensor_shift_check(G, n);
      r.check("tensor shift n=" + std::to_string(n) + " rank " + std::to_string(t.tensor_rank) + " = " +
                  std::to_string(t.target_rank),
              t.ok, t.detail);
    }
  } else if (o.suite == "resolution") {
    r.certificate("resolution contraction", resolution_contraction(G, N));
  } else if (o.suite == "homotopies") {
    if (o.colouring.empty()) throw ParseError("verify --suite homotopies needs a colouring file");
    auto C = parse_colouring(G, r.input("colouring", o.colouring));
    auto Nv = nerve(C, N + 1);
    auto h = homotopy_h(Nv, N);
    auto k = homotopy_k(Nv, N);
    r.certificate("h on chains", h.chains);
    r.certificate("h on coinvariants", h.coinvariants);
    r.certificate("k on chains", k.chains);
    r.certificate("k on coinvariants", k.coinvariants);
    for (int n = 0; n <= N; ++n) {
      auto ch = colouring_homology(Nv, n);
      r.check("ordered subnerve homology n=" + std::to_string(n) + " " + ch.full.str(), ch.agree(),
              "degree=" + std::to_string(n) + " full=" + ch.full.str() + " strict=" + ch.strict.str());
    }
  } else if (o.suite == "anticech") {
    auto A = build_anti_cech(G, o.steps, N);
    r.check("anti-Cech sequence stabilizes", A.stable_index.has_value(), "steps=" + std::to_string(o.steps));
    if (A.stable_index) {
      auto cmp = compare_with_groupoid(A);
      for (int n = 0; n <= N; ++n) {
        r.check("anti-Cech H_" + std::to_string(n) + " = H_" + std::to_string(n) + "(G) = " + cmp.groupoid[n].str(),
                cmp.anti_cech[n] == cmp.groupoid[n],
                "degree=" + std::to_string(n) + " anti_cech=" + cmp.anti_cech[n].str() + " groupoid=" + cmp.groupoid[n].str());
        r.check("Phi Psi inverse on H_" + std::to_string(n), cmp.inverse[n], "degree=" + std::to_string(n));
      }
      r.check("closeness homotopies", cmp.closeness_ok, "certificate failed");
    }
  } else {
    throw ParseError("--suite must be complex, resolution, homotopies or anticech");
  }
  return r.finish();
}

int cmd_snf(const Options& o) {
  Report r("snf", o.deterministic);
  auto M = parse_matrix(r.input("matrix", o.matrix));
  auto S = smith_normal_form(M, {false, false, false, false});
  r.line() << "shape: " << M.rows() << " x " << M.cols() << "\nrank: " << S.rank << "\nD = diag(";
  for (std::size_t i = 0; i < S.diagonal.size(); ++i) r.line() << (i ? ", " : "") << S.diagonal[i].str();
  r.line() << ")\n";
  return r.finish();
}

int cmd_colouring_homology(const Options& o) {
  Report r("colouring-homology", o.deterministic);
  auto G = parse_groupoid(r.input("groupoid", o.groupoid));
  auto C = parse_colouring(G, r.input("colouring", o.colouring));
  r.line() << "colours: " << C.colour_count() << "\nmax_degree: " << o.max_degree << "\n";
  auto Nv = nerve(C, o.max_degree + 1);
  for (int n = 0; n <= o.max_degree; ++n) {
    auto h = colouring_homology(Nv, n);
    r.line() << "H_" << n << " = " << h.full.str() << "\n";
    r.check("ordered subnerve agrees in degree " + std::to_string(n), h.agree(), "strict=" + h.strict.str());
  }
  return r.finish();
}

int cmd_anticech(const Options& o) {
  Report r("anticech", o.deterministic);
  auto G = parse_groupoid(r.input("groupoid", o.groupoid));
  const int N = o.max_degree;
  r.line() << "steps: " << o.steps << "\nmax_degree: " << N << "\n";
  auto A = build_anti_cech(G, o.steps, N);
  for (std::size_t j = 0; j < A.steps.size(); ++j) {
    const auto& s = A.steps[j];
    r.line() << "step " << j << ": scale=" << s.scale.size() << " colours=" << s.colouring.colour_count()
             << " cover=" << s.nerve.cover.elements.size() << " inflation=" << (s.inflation_ok ? "ok" : "FAIL");
    for (int n = 0; n <= N; ++n) r.line() << " H_" << n << "=" << s.homology[n].str();
    r.line() << "\n";
  }
  if (!A.stable_index) {
    r.line() << "COMPARISON: NOT STABILIZED FAIL(steps=" << o.steps << ")\n";
    return r.finish(kVerify);
  }
  r.line() << "stable_index: " << *A.stable_index << "\n";
  auto cmp = compare_with_groupoid(A);
  for (int n = 0; n <= N; ++n)
    r.line() << "H_" << n << ": anti_cech=" << cmp.anti_cech[n].str() << " groupoid=" << cmp.groupoid[n].str()
             << " inverse=" << (cmp.inverse[n] ? "ok" : "FAIL") << "\n";
  r.line() << "closeness: " << (cmp.closeness_ok ? "ok" : "FAIL") << "\n";
  if (cmp.ok()) {
    r.line() << "COMPARISON: ISO\n";
    return r.finish();
  }
  r.line() << "COMPARISON: FAIL(see table)\n";
  return r.finish(kVerify);
}

int cmd_dad(const Options& o) {
  Report r("dad-colouring", o.deterministic);
  auto G = parse_groupoid(r.input("groupoid", o.groupoid));
  auto K = parse_scale(G, r.input("scale", o.scale));
  const std::size_t cap = o.cap ? o.cap : G.size();
  r.line() << "scale_size: " << K.size() << "\ncap: " << cap << "\ndmax: " << o.dmax << "\n";
  auto K3 = scale_power(G, K, 3);
  auto w = search_witness(G, K3, o.dmax, cap);
  if (!w) {
    r.line() << "witness: none with at most " << o.dmax + 1 << " classes\n";
    return r.finish();
  }
  r.line() << "witness: d=" << w->d() << (w->greedy ? " (greedy)" : " (exact)") << "\n";
  for (std::size_t i = 0; i < w->cover.size(); ++i)
    r.line() << "  U_" << i << ": " << join_ids(G, w->cover[i]) << " generates " << w->generated[i].size() << "\n";
  auto C = dad_witness_to_colouring(G, K, *w);
  r.line() << "colouring: " << C.colour_count() << " parts\n";
  for (std::size_t i = 0; i < C.parts().size(); ++i)
    r.line() << "  G_" << i << ": " << join_ids(G, C.parts()[i].members()) << "\n";
  const int d = C.d();
  const int top = std::max(o.max_degree, d + 1);
  auto Nv = nerve(C, top + 1);
  std::vector<HomologyGroup> H;
  for (int n = 0; n <= top; ++n) {
    H.push_back(colouring_homology(Nv, n).full);
    r.line() << "H_" << n << " = " << H.back().str() << "\n";
  }
  auto failing = lebesgue_failure(C, K);
  r.check("K-Lebesgue", !failing.has_value(), failing ? "unit=" + G.id(*failing) : "");
  r.check("at most d+1 parts", C.d() <= w->d(), "parts=" + std::to_string(C.colour_count()));
  for (int n = d + 1; n <= top; ++n)
    r.check("H_" + std::to_string(n) + " = 0", H[n].is_zero(), "degree=" + std::to_string(n) + " H=" + H[n].str());
  r.check("H_" + std::to_string(d) + " torsion-free", H[d].torsion.empty(), "degree=" + std::to_string(d) + " H=" + H[d].str());
  return r.finish();
}

int cmd_uf(const Options& o) {
  Report r("uf-homology", o.deterministic);
  auto X = parse_metric(r.input("metric", o.metric));
  r.line() << "points: " << X.size() << "\nmax_degree: " << o.max_degree << "\n";
  auto C = uf_complex(X, o.max_degree + 1);
  for (int n = 0; n <= o.max_degree; ++n) r.line() << "H_" << n << " = " << homology(*C, n).str() << "\n";
  auto check = verify_translation(uf_translation(X, o.max_degree));
  r.check("alpha beta inverse", check.inverse, "alpha beta or beta alpha is not the identity");
  r.check("alpha beta chain maps", check.chain_maps, "boundaries do not commute");
  r.line() << "ROUND-TRIP: " << (check.inverse && check.chain_maps ? "PASS" : "FAIL") << "\n";
  return r.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homology of finite ample groupoids"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--deterministic", o.deterministic, "suppress timing lines");
  app.add_option("--threads", o.threads, "worker threads (results do not depend on it)");
  app.fallthrough();

  auto* homology = app.add_subcommand("homology", "groupoid homology H_0..H_N");
  homology->add_option("groupoid", o.groupoid)->required();
  homology->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "certify chain identities");
  verify->add_option("groupoid", o.groupoid)->required();
  verify->add_option("colouring", o.colouring);
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"complex", "resolution", "homotopies", "anticech"}));
  verify->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);
  verify->add_option("--steps", o.steps)->check(CLI::PositiveNumber);

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix file");
  snf->add_option("matrix", o.matrix)->required();

  auto* ch = app.add_subcommand("colouring-homology", "homology of a colouring");
  ch->add_option("groupoid", o.groupoid)->required();
  ch->add_option("colouring", o.colouring)->required();
  ch->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);

  auto* ac = app.add_subcommand("anticech", "anti-Cech sequence and comparison");
  ac->add_option("groupoid", o.groupoid)->required();
  ac->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
  ac->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);

  auto* dad = app.add_subcommand("dad-colouring", "colouring from a dimension witness");
  dad->add_option("groupoid", o.groupoid)->required();
  dad->add_option("scale", o.scale)->required();
  dad->add_option("--cap", o.cap, "arrow cap for generated subgroupoids (default |G|)");
  dad->add_option("--dmax", o.dmax)->check(CLI::NonNegativeNumber);
  dad->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);

  auto* uf = app.add_subcommand("uf-homology", "uniformly finite homology of a metric space");
  uf->add_option("metric", o.metric)->required();
  uf->add_option("--max-degree", o.max_degree)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kOther;
  }

  try {
    if (const char* env = std::getenv("GHOM_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (!*env || *end || v == 0) throw ParseError(std::string("GHOM_CAP: expected a positive integer, got '") + env + "'");
      set_enumeration_cap(v);
    }
    if (o.threads) set_thread_count(o.threads);
    if (*homology) return cmd_homology(o);
    if (*verify) return cmd_verify(o);
    if (*snf) return cmd_snf(o);
    if (*ch) return cmd_colouring_homology(o);
    if (*ac) return cmd_anticech(o);
    if (*dad) return cmd_dad(o);
    if (*uf) return cmd_uf(o);
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const MalformedSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const UnknownUnit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
