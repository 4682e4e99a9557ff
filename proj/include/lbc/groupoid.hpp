#pragma once

// Lie groupoids presented on charts: G => M with structure maps, an explicit
// parametrization W of composable pairs (g, h) with s(g) = t(h), and the
// checks that a function, form or vector field on G is multiplicative.

#include <functional>
#include <optional>
#include <string>

#include "lbc/algebroid.hpp"
#include "lbc/report.hpp"
#include "lbc/tensor.hpp"

namespace lbc {

struct ComposableChart {
  Chart W;
  SmoothMap p1, p2, mul;  // W -> G; mul(g, h) = g h
};

/// Triples (g, h, k) with g, h and h, k composable.
struct TripleChart {
  Chart W3;
  SmoothMap q1, q2, q3;  // W3 -> G
};

struct ChartGroupoid {
  std::string name;
  Chart G;
  Chart M;
  SmoothMap s, t;  // G -> M
  SmoothMap unit;  // M -> G
  SmoothMap inv;   // G -> G
  ComposableChart comp;
  std::optional<TripleChart> triple;
  /// (a, b): X -> G with s o a = t o b, to the map X -> W.
  std::function<SmoothMap(const SmoothMap&, const SmoothMap&)> pair;
  /// Right-invariant vector field of the a-th algebroid frame section.
  std::function<VectorField(int)> right_invariant;
  std::optional<AlgebroidSpec> algebroid;
  /// Euler field and its lift to W, for scaling extensions.
  std::optional<VectorField> euler;
  std::optional<VectorField> euler_lift;
};

/// G = M x M, s(x, y) = y, t(x, y) = x, (x, y)(y, z) = (x, z).
/// Variables of copy i are suffixed "_i".
ChartGroupoid pair_groupoid(const Chart& m);

/// G = base x R^k, s = t = projection, (x, p)(x, q) = (x, p + q). Fiber
/// variables are "p" (or "p1".."pk"), with "q" for the second factor.
ChartGroupoid vb_addition_groupoid(const Chart& base, int fiber_rank);

/// G x R^x => M x R^x with the trivial action: every structure map carries r
/// through unchanged. Provides Z = r d_r and its lift to W.
ChartGroupoid scaling_extension(const ChartGroupoid& g, const std::string& r = "r");

/// Composable pairs, units, inverses, unit and inverse laws, associativity.
Report verify_groupoid(const ChartGroupoid& g, std::uint64_t seed = 42);

/// f(g h) = f(g) + f(h).
Report is_multiplicative_function(const ChartGroupoid& g, const Expr& f, std::uint64_t seed = 42);

/// m* w = pr1* w + pr2* w.
Report is_multiplicative_form(const ChartGroupoid& g, const Form& w, std::uint64_t seed = 42);

/// dm(Z_W) = Z o m, given a lift Z_W with dp_i(Z_W) = Z o p_i (LiftMismatch otherwise).
Report is_multiplicative_vf(const ChartGroupoid& g, const VectorField& z, const VectorField& z_w,
                            std::uint64_t seed = 42);

/// D(a) = 1*(L_{a->} w), l(a) = 1*(i_{a->} w) on the algebroid frame.
/// Throws MissingRightInvariantRule without a rule or algebroid.
SpencerData spencer_of_form(const ChartGroupoid& g, const Form& w);

}  // namespace lbc
