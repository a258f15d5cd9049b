#pragma once

#include <string>
#include <vector>

#include "dataset.hpp"
#include "lp.hpp"

namespace lim {

// H-representation polytope over (y, mu). The trailing `aux` coordinates are
// existentially quantified working variables; the represented set is the
// projection onto the leading `dim` coordinates. Inverse cones keep their
// nonnegative combination coefficients as aux dimensions instead of being
// projected to pure H-form, and all queries run linear programs on the lift.
template <class T>
struct Polytope {
  int dim = 0;
  int aux = 0;
  std::vector<LpRow<T>> ineqs;  // a.z <= c, width dim+aux
  std::vector<LpRow<T>> eqs;    // a.z == c

  int width() const { return dim + aux; }
};

// Apex-and-generators form of an inverse cone: the set of ideal points that
// can induce the agent's observed row given the peers' rows. Generators are
// apex - peer; membership means apex + sum(mu_j * generator_j) with mu >= 0.
template <class T>
struct ConeRep {
  Vec<T> apex;
  Mat<T> generators;
  std::vector<std::string> peer_order;
};

template <class T>
struct IntersectionStatus {
  bool nonempty = false;
  Vec<T> witness;            // a point of the intersection (projection coords)
  int dimension = 0;         // affine dimension of the intersection
  Vec<T> relative_interior;  // max-min-slack point, strictly inside every non-implicit face
  Vec<T> farkas;             // empty case: multipliers over polytope_lp(intersect(ps))
};

struct GeometryLimits {
  int vertex_cap = 10000;
};

template <class T>
Polytope<T> outcome_polytope(const OutcomeSpace& y);

template <class T>
ConeRep<T> cone_rep(const Dataset& d, int obs_index, const std::string& agent);

template <class T>
Polytope<T> inverse_cone(const Dataset& d, int obs_index, const std::string& agent,
                         const OutcomeSpace& y);
template <class T>
Polytope<T> inverse_cone(const Dataset& d, const std::string& group, const std::string& agent,
                         const OutcomeSpace& y);

// Feasibility program of the (possibly lifted) polytope: eqs first, then ineqs.
template <class T>
LinearProgram<T> polytope_lp(const Polytope<T>& p);

template <class T>
Polytope<T> intersect(const std::vector<Polytope<T>>& ps);

template <class T>
bool polytope_member(const Polytope<T>& p, const Vec<T>& y);

// full=false computes feasibility and a witness only, skipping the dimension
// sweep and relative-interior program that consistency tests do not need.
template <class T>
IntersectionStatus<T> intersection_status(const std::vector<Polytope<T>>& ps, bool full = true);

template <class T>
bool affinely_independent(const Mat<T>& points);

// All vertices of the projection, deduplicated, lexicographically sorted.
// Throws Capacity when the basis-candidate count exceeds the cap.
template <class T>
Mat<T> enumerate_vertices(const Polytope<T>& p, int cap = GeometryLimits{}.vertex_cap);

extern template Polytope<Rational> outcome_polytope(const OutcomeSpace&);
extern template Polytope<FloatNum> outcome_polytope(const OutcomeSpace&);
extern template ConeRep<Rational> cone_rep(const Dataset&, int, const std::string&);
extern template ConeRep<FloatNum> cone_rep(const Dataset&, int, const std::string&);
extern template Polytope<Rational> inverse_cone(const Dataset&, int, const std::string&,
                                                const OutcomeSpace&);
extern template Polytope<FloatNum> inverse_cone(const Dataset&, int, const std::string&,
                                                const OutcomeSpace&);
extern template Polytope<Rational> inverse_cone(const Dataset&, const std::string&,
                                                const std::string&, const OutcomeSpace&);
extern template Polytope<FloatNum> inverse_cone(const Dataset&, const std::string&,
                                                const std::string&, const OutcomeSpace&);
extern template LinearProgram<Rational> polytope_lp(const Polytope<Rational>&);
extern template LinearProgram<FloatNum> polytope_lp(const Polytope<FloatNum>&);
extern template Polytope<Rational> intersect(const std::vector<Polytope<Rational>>&);
extern template Polytope<FloatNum> intersect(const std::vector<Polytope<FloatNum>>&);
extern template bool polytope_member(const Polytope<Rational>&, const Vec<Rational>&);
extern template bool polytope_member(const Polytope<FloatNum>&, const Vec<FloatNum>&);
extern template IntersectionStatus<Rational> intersection_status(
    const std::vector<Polytope<Rational>>&, bool);
extern template IntersectionStatus<FloatNum> intersection_status(
    const std::vector<Polytope<FloatNum>>&, bool);
extern template bool affinely_independent(const Mat<Rational>&);
extern template bool affinely_independent(const Mat<FloatNum>&);
extern template Mat<Rational> enumerate_vertices(const Polytope<Rational>&, int);
extern template Mat<FloatNum> enumerate_vertices(const Polytope<FloatNum>&, int);

}  // namespace lim
