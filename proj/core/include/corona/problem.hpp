#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corona/series.hpp"

namespace corona {

/// Disk-side corona data: n pairs of polynomials (F_j, G_j) subject to
///   normalization  sup_z sum_j |F_j|^2 + |G_j|^2 <= 1 (+ tolerance)
///   nondegeneracy  inf_z sum_j |F_j|^2 + |G_j|^2 >= delta^2 > 0.
/// `delta` is the promised lower bound; 0 means "not supplied" and the
/// solver then works with the measured infimum.
struct DiskCoronaProblem {
  int n = 0;
  std::vector<CSeries> F;
  std::vector<CSeries> G;
  double delta = 0.0;

  /// Shape/size/finiteness checks; throws InvalidInput.
  void validate() const;
};

/// Ball-side corona data: n quaternionic power series f_j with
/// inf_q sum |f_j(q)|^2 > 0 on the unit ball.
struct BallCoronaProblem {
  int n = 0;
  std::vector<QSeries> f;
  double delta = 0.0;

  void validate() const;
};

enum class ProblemKind { Disk, Ball };

/// Reads just the "kind" discriminator ("disk" | "ball").
ProblemKind peek_problem_kind(const std::string& json_text);

// JSON layout (ascending coefficient degree):
//   disk: {"kind":"disk","n":N,"delta":d?,"F":[[[re,im],...],...],"G":[...]}
//   ball: {"kind":"ball","n":N,"delta":d?,"f":[[[x0,x1,x2,x3],...],...]}
DiskCoronaProblem parse_disk_problem(const std::string& json_text);
BallCoronaProblem parse_ball_problem(const std::string& json_text);
std::string to_json_text(const DiskCoronaProblem& p);
std::string to_json_text(const BallCoronaProblem& p);

/// Seeded random disk problem with a-priori guarantees:
///   inf |F_1| >= delta_target   (F_1 = c0 + tail, l1(tail) <= c0 - delta_target)
///   sup D <= 1                  (l1 budgets of the remaining 2n-1 series
///                                sized so the suprema cannot exceed 1)
///   inf Delta > 0               (the remaining budgets are also capped at
///                                0.9*delta_target/sqrt(2), keeping the
///                                (1,1) pairing term away from zero)
/// Deterministic for a given seed. Throws InvalidInput for infeasible
/// parameters (delta_target outside (0, 0.999), degree out of range).
DiskCoronaProblem generate_disk_problem(int n, double delta_target, int degree,
                                        std::uint64_t seed);

/// Ball variant: generates disk data as above and reassembles each pair
/// into a quaternionic series on the e1 slice (frame I=e1, J=e2).
BallCoronaProblem generate_ball_problem(int n, double delta_target, int degree,
                                        std::uint64_t seed);

}  // namespace corona
