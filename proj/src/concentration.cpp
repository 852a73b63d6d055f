#include "cclab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace cclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec unit_in(const Mat& M, Rng& rng) {
  int n = (int)M.cols();
  for (;;) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.gaussian();
    double nn = w.norm();
    if (nn > 1e-12) return M * (w / nn);
  }
}

std::string format_witness(const Vec& x, double value) {
  std::ostringstream os;
  os << "distance " << value << " at (";
  for (int i = 0; i < x.size() && i < 8; ++i) os << (i ? ", " : "") << x(i);
  if (x.size() > 8) os << ", ...";
  os << ")";
  return os.str();
}

// Lipschitz quotient check restricted to the sphere of a subspace (the whole
// space when F0 is null).
bool validate_on(const LipschitzFn& f, const Mat* F0, int N, Rng& rng, long pairs) {
  for (long s = 0; s < pairs; ++s) {
    Vec x = F0 ? unit_in(*F0, rng) : random_unit_vector(AmbientNorm::L2, N, rng);
    Vec y = F0 ? unit_in(*F0, rng) : random_unit_vector(AmbientNorm::L2, N, rng);
    double sep = (x - y).norm();
    if (sep < 1e-12) continue;
    if (std::abs(f.evaluator(x) - f.evaluator(y)) > f.tau * (1.0 + 1e-6) * sep) return false;
  }
  return true;
}

// Random n-subspace draws, restricted to span(F0) when given; stops at the
// first draw whose sampled oscillation is at most 2*eps unless asked to run
// every trial (rate measurement).
FlatSearchReport flat_search_in(const LipschitzFn& f, const Mat* F0, int N, int n,
                                double eps, int trials, Rng& rng, bool stop_early,
                                double* flattest_out = nullptr) {
  if (!(eps > 0.0) || !(eps < 0.5 * f.tau))
    throw PreconditionError("find_flat_subspace: need 0 < eps < tau/2");
  int m = F0 ? (int)F0->cols() : N;
  if (n > m) throw PreconditionError("find_flat_subspace: subspace dimension too large");
  if (!validate_on(f, F0, N, rng, 10000))
    throw PreconditionError("find_flat_subspace: declared Lipschitz constant violated");
  FlatSearchReport rep;
  double flattest = kInf;
  for (int t = 0; t < trials; ++t) {
    Subspace R = random_subspace(m, n, rng);
    Subspace F = F0 ? Subspace(*F0 * R.basis) : R;
    OscillationResult o = oscillation_on_subspace(f, F, 512 * n, rng);
    double osc = o.max - o.min;
    rep.trials_run = t + 1;
    if (osc < flattest) {
      flattest = osc;
      if (!rep.success) rep.best = {F, o.lambda0, osc, t + 1};
    }
    if (osc <= 2.0 * eps) {
      rep.successes += 1;
      if (!rep.success) {
        rep.success = true;
        rep.best = {F, o.lambda0, osc, t + 1};  // first success wins
      }
      if (stop_early) break;
    }
  }
  if (flattest_out) *flattest_out = flattest;
  return rep;
}

int stage_dim(int m, int n, int stages, int s) {
  // geometric interpolation from the ambient dimension down to n
  double d = std::pow((double)m, 1.0 - (double)s / stages) * std::pow((double)n, (double)s / stages);
  int di = (int)std::lround(d);
  return std::min(m, std::max(n, di));
}

// Head-versus-rest recursion shared by the sphere cover experiments. Stage
// flatness runs on the Euclidean sphere of the current subspace scaled by
// rho; distances and the final inclusion use the ambient norm p.
FlatPick flat_recursion(const std::vector<ConvexBody>& pieces, AmbientNorm p, double rho,
                        double tau, std::optional<Subspace> section, int N, int n,
                        double eps0, double verify_eps, int trials, Rng& rng) {
  int k = (int)pieces.size();
  int winner = -1;
  Subspace Fwin = section ? *section : random_subspace(N, n, rng);
  if (k == 1) winner = 0;

  std::optional<Subspace> F0 = section;
  double ec = eps0;
  for (int head = 0; winner < 0; ++head) {
    int m = F0 ? F0->dim() : N;
    int d = head + 2 == k ? n : stage_dim(m, n, k - 1 - head, 1);
    ConvexBody piece = pieces[head];
    LipschitzFn f{[piece, p, rho](const Vec& u) {
                    return dist_to_body(piece, Vec(rho * u), p).value;
                  },
                  tau};
    FlatSearchReport rep =
        flat_search_in(f, F0 ? &F0->basis : nullptr, N, d, ec / 2.0, trials, rng, true);
    if (rep.best.lambda0 <= ec / 2.0) {
      winner = head;
      Fwin = rep.best.subspace;
      // the stage's own inclusion, before the final check at the original eps
      for (int s = 0; s < 500; ++s) {
        Vec u = unit_in(Fwin.basis, rng);
        double dist = dist_to_body(piece, Vec(rho * u), p).value;
        if (dist > ec + 1e-6)
          throw Error("multi_set_flat: stage " + std::to_string(head + 1) +
                      " verification failed, " + format_witness(Vec(rho * u), dist));
      }
      break;
    }
    if (head + 2 == k) {
      winner = k - 1;  // last dichotomy: everything flat-far from the head
      Fwin = rep.best.subspace;
      break;
    }
    F0 = rep.best.subspace;  // recurse inside the found subspace on the rest
    ec *= 0.5;
  }

  if (Fwin.dim() > n) Fwin = Fwin.head(n);
  const ConvexBody& win = pieces[winner];
  for (int s = 0; s < 1000; ++s) {
    Vec u = unit_in(Fwin.basis, rng);
    double pn = norm_eval(p, u);
    Vec x = u / pn;
    double dist = dist_to_body(win, x, p).value;
    if (dist > verify_eps + 1e-6)
      throw Error("flat cover pick: final verification failed for piece " +
                  std::to_string(winner + 1) + ", " + format_witness(x, dist));
  }
  return {winner + 1, Fwin};
}

void check_sphere_cover(const std::vector<ConvexBody>& pieces, AmbientNorm p, Rng& rng,
                        const char* who) {
  if (pieces.empty()) throw PreconditionError(std::string(who) + ": empty cover");
  int N = pieces[0].dim();
  for (auto& piece : pieces)
    if (piece.dim() != N) throw PreconditionError(std::string(who) + ": dimension mismatch");
  for (int s = 0; s < 2000; ++s) {
    Vec u = random_unit_vector(AmbientNorm::L2, N, rng);
    Vec x = u / norm_eval(p, u);
    double v = kInf;
    for (auto& piece : pieces) v = std::min(v, violation(piece, x));
    if (v > 1e-9)
      throw PreconditionError(std::string(who) + ": sphere point escapes the cover, " +
                              format_witness(x, v));
  }
}

}  // namespace

bool validate_lipschitz(const LipschitzFn& f, int N, Rng& rng, long pairs) {
  return validate_on(f, nullptr, N, rng, pairs);
}

OscillationResult oscillation_on_subspace(const LipschitzFn& f, const Subspace& F,
                                          int m_samples, Rng& rng) {
  if (m_samples < 2 * F.dim())
    throw PreconditionError("oscillation_on_subspace: too few samples");
  double mn = kInf, mx = -kInf;
  auto eat = [&](const Vec& u) {
    double v = f.evaluator(u);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  };
  for (int j = 0; j < F.dim(); ++j) {
    eat(F.basis.col(j));
    eat(Vec(-F.basis.col(j)));
  }
  for (int s = 0; s < m_samples; ++s) eat(unit_in(F.basis, rng));
  return {mn, mx, 0.5 * (mn + mx)};
}

FlatSearchReport find_flat_subspace(const LipschitzFn& f, int N, int n, double eps,
                                    int trials, Rng& rng) {
  return flat_search_in(f, nullptr, N, n, eps, trials, rng, true);
}

FlatRateRow flat_success_rate(const LipschitzFn& f, int N, int n, double eps, int trials,
                              uint64_t seed) {
  Rng rng(seed);
  double flattest = kInf;
  FlatSearchReport rep = flat_search_in(f, nullptr, N, n, eps, trials, rng, false, &flattest);
  return {N, n, eps, rep.trials_run, rep.successes, flattest, seed};
}

FlatPick two_set_flat(const ConvexBody& A1, const ConvexBody& A2, int n, double eps,
                      int trials, Rng& rng) {
  std::vector<ConvexBody> both = {A1, A2};
  check_sphere_cover(both, AmbientNorm::L2, rng, "two_set_flat");
  int N = A1.dim();
  ConvexBody first = A1;
  LipschitzFn f{[first](const Vec& x) { return dist_to_body(first, x, AmbientNorm::L2).value; },
                1.0};
  FlatSearchReport rep = flat_search_in(f, nullptr, N, n, eps / 2.0, trials, rng, true);
  int index = rep.best.lambda0 <= eps / 2.0 ? 1 : 2;
  const ConvexBody& win = index == 1 ? A1 : A2;
  for (int s = 0; s < 1000; ++s) {
    Vec u = unit_in(rep.best.subspace.basis, rng);
    double d = dist_to_body(win, u, AmbientNorm::L2).value;
    if (d > eps + 1e-6)
      throw Error("two_set_flat: verification failed for piece " + std::to_string(index) +
                  ", " + format_witness(u, d));
  }
  return {index, rep.best.subspace};
}

FlatPick multi_set_flat(const std::vector<ConvexBody>& pieces, int n, double eps, Rng& rng) {
  check_sphere_cover(pieces, AmbientNorm::L2, rng, "multi_set_flat");
  int N = pieces[0].dim();
  return flat_recursion(pieces, AmbientNorm::L2, 1.0, 1.0, std::nullopt, N, n, eps, eps,
                        300, rng);
}

SectionReport euclidean_section_quality(AmbientNorm p, int N, int n, int trials, Rng& rng) {
  if (p == AmbientNorm::L2)
    throw PreconditionError("euclidean_section_quality: ambient norm must not be Euclidean");
  if (n > N) throw PreconditionError("euclidean_section_quality: n exceeds N");
  SectionReport out;
  out.best_ratio = kInf;
  for (int t = 0; t < trials; ++t) {
    Subspace F = random_subspace(N, n, rng);
    double mn = kInf, mx = 0.0;
    for (int s = 0; s < 1000; ++s) {
      double v = norm_eval(p, unit_in(F.basis, rng));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    double ratio = mx / mn;
    if (ratio < out.best_ratio) {
      out.best_ratio = ratio;
      out.subspace = F;
    }
    out.trials_run = t + 1;
  }
  return out;
}

FlatPick sphere_cover_ball_experiment(AmbientNorm p, const std::vector<ConvexBody>& pieces,
                                      int n, double eps, Rng& rng) {
  check_sphere_cover(pieces, p, rng, "sphere_cover_ball_experiment");
  int N = pieces[0].dim();
  if (p == AmbientNorm::L2)
    return flat_recursion(pieces, p, 1.0, 1.0, std::nullopt, N, n, eps, eps, 300, rng);

  // hunt for a section whose Euclidean sphere sits between the norm sphere
  // and its (1 + eps/3) dilate
  int m = std::min(N, std::max(2, n + 1));
  double target = 1.0 + eps / 3.0;
  double best = kInf;
  Subspace E = random_subspace(N, m, rng);
  for (int t = 0; t < 400 && best > target; ++t) {
    Subspace F = random_subspace(N, m, rng);
    double mn = kInf, mx = 0.0;
    for (int s = 0; s < 1000; ++s) {
      double v = norm_eval(p, unit_in(F.basis, rng));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (mx / mn < best) {
      best = mx / mn;
      E = F;
    }
  }
  if (best > target) {
    std::ostringstream os;
    os << "sphere_cover_ball_experiment: section quality not reached, best ratio " << best
       << " vs target " << target;
    throw SearchError(os.str());
  }
  double mn = kInf, mx = 0.0;
  for (int s = 0; s < 2000; ++s) {
    double v = norm_eval(p, unit_in(E.basis, rng));
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  double rho = 1.0 / mn;           // Euclidean radius placing the sphere just outside S_X
  double tau = rho * mx * 1.02;    // Lipschitz bound for p-distances along the section
  return flat_recursion(pieces, p, rho, tau, E, N, n, eps / 3.0, eps, 300, rng);
}

}  // namespace cclab
