// A-infinity structure maps and functor components on finite graded bases:
// symbolic relation terms with signs, the term <-> facet correspondence, and
// exact-rational residual checks of the associativity and functor relations.
#pragma once

#include <boost/rational.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "trees.hpp"

namespace multiquilt {

using Rat = boost::rational<long long>;

/// Finite A-infinity category data: objects, graded hom bases, and sparse
/// structure maps mu^n.  mu^n maps
///   Hom(X_{n-1}, X_n) (x) ... (x) Hom(X_0, X_1) -> Hom(X_0, X_n)
/// and has degree 2 - n.  Inputs are stored in ascending composition order
/// (a_1, ..., a_n) with a_m in Hom(X_{m-1}, X_m).
struct AInftyData {
  std::vector<std::string> objects;
  /// degrees of the basis of Hom(src, dst)
  std::map<std::pair<int, int>, std::vector<int>> hom;
  /// key = [n, X_0..X_n, b_1..b_n]  ->  { b_0 -> coefficient }
  std::map<std::vector<int>, std::map<int, Rat>> mu;

  int hom_dim(int src, int dst) const {
    auto it = hom.find({src, dst});
    return it == hom.end() ? 0 : static_cast<int>(it->second.size());
  }
  int degree(int src, int dst, int b) const { return hom.at({src, dst}).at(static_cast<size_t>(b)); }

  void set_mu(const std::vector<int>& chain, const std::vector<int>& inputs, int output, Rat coeff) {
    std::vector<int> key;
    key.push_back(static_cast<int>(inputs.size()));
    key.insert(key.end(), chain.begin(), chain.end());
    key.insert(key.end(), inputs.begin(), inputs.end());
    if (coeff == Rat(0))
      mu[key].erase(output);
    else
      mu[key][output] = coeff;
  }
  const std::map<int, Rat>* apply_mu(const std::vector<int>& chain, const std::vector<int>& inputs) const {
    std::vector<int> key;
    key.push_back(static_cast<int>(inputs.size()));
    key.insert(key.end(), chain.begin(), chain.end());
    key.insert(key.end(), inputs.begin(), inputs.end());
    auto it = mu.find(key);
    return it == mu.end() ? nullptr : &it->second;
  }
};

/// A-infinity functor data: object map and components Phi^d of degree 1 - d,
/// stored sparsely like the structure maps (chains are in the source).
struct FunctorData {
  std::vector<int> object_map;  ///< source object index -> target object index
  /// key = [d, X_0..X_d, b_1..b_d] -> { b_0 in Hom_B(phi X_0, phi X_d) -> coeff }
  std::map<std::vector<int>, std::map<int, Rat>> phi;

  void set_phi(const std::vector<int>& chain, const std::vector<int>& inputs, int output, Rat coeff) {
    std::vector<int> key;
    key.push_back(static_cast<int>(inputs.size()));
    key.insert(key.end(), chain.begin(), chain.end());
    key.insert(key.end(), inputs.begin(), inputs.end());
    if (coeff == Rat(0))
      phi[key].erase(output);
    else
      phi[key][output] = coeff;
  }
  const std::map<int, Rat>* apply_phi(const std::vector<int>& chain, const std::vector<int>& inputs) const {
    std::vector<int> key;
    key.push_back(static_cast<int>(inputs.size()));
    key.insert(key.end(), chain.begin(), chain.end());
    key.insert(key.end(), inputs.begin(), inputs.end());
    auto it = phi.find(key);
    return it == phi.end() ? nullptr : &it->second;
  }
};

// ---------------------------------------------------------------------------
// Symbolic relation terms
// ---------------------------------------------------------------------------

/// One term of the arity-d functor relation.  LHS terms are
/// Phi^e(a_d, ..., mu^j(a_{i+j}, ..., a_{i+1}), ..., a_1) with e = d - j + 1
/// and sign (-1)^{|a_1| + ... + |a_i| - i}; RHS terms are
/// mu^r(Phi^{i_r}, ..., Phi^{i_1}) over compositions i_1 + ... + i_r = d.
struct RelationTerm {
  enum class Side { LHS, RHS };
  Side side = Side::LHS;
  int e = 0, i = 0, j = 0;        ///< LHS pattern data
  std::vector<int> composition;   ///< RHS pattern data
  int sign_prefix = 0;            ///< sign exponent is |a_1|+...+|a_{sign_prefix}| - sign_prefix

  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
  friend auto operator<=>(const RelationTerm& a, const RelationTerm& b) {
    return std::tie(a.side, a.e, a.i, a.j, a.composition) <=>
           std::tie(b.side, b.e, b.i, b.j, b.composition);
  }
};

/// All LHS terms for arity d, in lexicographic (j, i) order: d(d+1)/2 terms.
inline std::vector<RelationTerm> lhs_terms(int d) {
  if (d < 1) throw std::invalid_argument("lhs_terms: d >= 1 required");
  std::vector<RelationTerm> out;
  for (int j = 1; j <= d; ++j)
    for (int i = 0; i + j <= d; ++i)
      out.push_back(RelationTerm{RelationTerm::Side::LHS, d - j + 1, i, j, {}, i});
  return out;
}

/// All RHS terms for arity d: one per composition, 2^{d-1} terms.
inline std::vector<RelationTerm> rhs_terms(int d) {
  if (d < 1) throw std::invalid_argument("rhs_terms: d >= 1 required");
  std::vector<RelationTerm> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem) -> void {
    if (rem == 0) {
      out.push_back(RelationTerm{RelationTerm::Side::RHS, 0, 0, 0, cur, 0});
      return;
    }
    for (int first = 1; first <= rem; ++first) {
      cur.push_back(first);
      self(self, rem - first);
      cur.pop_back();
    }
  };
  rec(rec, d);
  return out;
}

/// Term <-> boundary stratum correspondence: mu-inside terms match Type 1
/// facets, nontrivial compositions match Type 2 facets, and the j = 1 / r = 1
/// terms match broken Floer trajectories at the i-th input / the output.
inline FacetLabel facet_bijection_label(const RelationTerm& t) {
  if (t.side == RelationTerm::Side::LHS)
    return (t.j >= 2) ? type1_label(t.j, t.i) : floer_incoming(t.i + 1);
  return (t.composition.size() >= 2) ? type2_label(t.composition) : floer_outgoing();
}

inline std::vector<std::pair<RelationTerm, FacetLabel>> facet_bijection(int d) {
  std::vector<std::pair<RelationTerm, FacetLabel>> out;
  for (const auto& t : lhs_terms(d)) out.emplace_back(t, facet_bijection_label(t));
  for (const auto& t : rhs_terms(d)) out.emplace_back(t, facet_bijection_label(t));
  return out;
}

// ---------------------------------------------------------------------------
// Residual checks
// ---------------------------------------------------------------------------

namespace detail {

inline Rat reduce_mod2(const Rat& x) {
  if (x.denominator() % 2 == 0) throw std::invalid_argument("mod-2 mode requires odd denominators");
  long long n = x.numerator() % 2;
  return Rat(n < 0 ? -n : n);
}

/// Enumerate all object chains X_0..X_d and basis tuples a_1..a_d with
/// nonzero hom spaces, invoking fn(chain, inputs).
template <typename Fn>
void for_each_tuple(const AInftyData& A, int d, Fn&& fn) {
  const int n_obj = static_cast<int>(A.objects.size());
  std::vector<int> chain(static_cast<size_t>(d) + 1);
  std::vector<int> inputs(static_cast<size_t>(d));
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos > d) {
      auto rec2 = [&](auto&& self2, int m) -> void {
        if (m > d) {
          fn(chain, inputs);
          return;
        }
        int dim = A.hom_dim(chain[static_cast<size_t>(m - 1)], chain[static_cast<size_t>(m)]);
        for (int b = 0; b < dim; ++b) {
          inputs[static_cast<size_t>(m - 1)] = b;
          self2(self2, m + 1);
        }
      };
      rec2(rec2, 1);
      return;
    }
    for (int o = 0; o < n_obj; ++o) {
      chain[static_cast<size_t>(pos)] = o;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

inline int sign_exponent(const AInftyData& A, const std::vector<int>& chain,
                         const std::vector<int>& inputs, int prefix) {
  int s = -prefix;
  for (int m = 1; m <= prefix; ++m)
    s += A.degree(chain[static_cast<size_t>(m - 1)], chain[static_cast<size_t>(m)],
                  inputs[static_cast<size_t>(m - 1)]);
  return s;
}

inline Rat sign_of(int exponent) { return (((exponent % 2) + 2) % 2 == 0) ? Rat(1) : Rat(-1); }

/// Accumulate the LHS sum for one tuple.  `outer` applies the outer
/// operation (mu^e of A for the associativity relation, Phi^e for the
/// functor relation) to the contracted input list.
template <typename Outer>
void accumulate_lhs(const AInftyData& A, int d, const std::vector<int>& chain,
                    const std::vector<int>& inputs, const Outer& outer, std::map<int, Rat>& acc) {
  for (int j = 1; j <= d; ++j)
    for (int i = 0; i + j <= d; ++i) {
      // inner mu^j on a_{i+1}..a_{i+j}
      std::vector<int> inner_chain(chain.begin() + i, chain.begin() + i + j + 1);
      std::vector<int> inner_in(inputs.begin() + i, inputs.begin() + i + j);
      const auto* mid = A.apply_mu(inner_chain, inner_in);
      if (!mid) continue;
      Rat sgn = sign_of(sign_exponent(A, chain, inputs, i));
      std::vector<int> outer_chain(chain.begin(), chain.begin() + i + 1);
      outer_chain.insert(outer_chain.end(), chain.begin() + i + j, chain.end());
      for (const auto& [b_mid, c1] : *mid) {
        std::vector<int> outer_in(inputs.begin(), inputs.begin() + i);
        outer_in.push_back(b_mid);
        outer_in.insert(outer_in.end(), inputs.begin() + i + j, inputs.end());
        const auto* res = outer(outer_chain, outer_in);
        if (!res) continue;
        for (const auto& [b_out, c2] : *res) acc[b_out] += sgn * c1 * c2;
      }
    }
}

}  // namespace detail

/// Max-absolute-entry residual of the arity-d associativity relation for
/// d = 1..d_max.  Exactly 0 entrywise for genuine A-infinity data.
inline std::vector<Rat> check_ainfty(const AInftyData& A, int d_max, bool mod2 = false) {
  std::vector<Rat> residuals;
  for (int d = 1; d <= d_max; ++d) {
    Rat worst(0);
    detail::for_each_tuple(A, d, [&](const std::vector<int>& chain, const std::vector<int>& inputs) {
      std::map<int, Rat> acc;
      auto outer = [&](const std::vector<int>& oc, const std::vector<int>& oi) {
        return A.apply_mu(oc, oi);
      };
      detail::accumulate_lhs(A, d, chain, inputs, outer, acc);
      for (auto& [b, c] : acc) {
        if (mod2) c = detail::reduce_mod2(c);
        Rat a = c < Rat(0) ? -c : c;
        if (a > worst) worst = a;
      }
    });
    residuals.push_back(worst);
  }
  return residuals;
}

/// Max-absolute-entry residual of the arity-d functor relation (LHS - RHS)
/// for d = 1..d_max.
inline std::vector<Rat> check_functor(const AInftyData& A, const AInftyData& B, const FunctorData& F,
                                      int d_max, bool mod2 = false) {
  if (F.object_map.size() != A.objects.size())
    throw std::invalid_argument("check_functor: object map does not cover the source objects");
  for (int o : F.object_map)
    if (o < 0 || o >= static_cast<int>(B.objects.size()))
      throw std::invalid_argument("check_functor: object map hits a missing target object");
  std::vector<Rat> residuals;
  for (int d = 1; d <= d_max; ++d) {
    Rat worst(0);
    detail::for_each_tuple(A, d, [&](const std::vector<int>& chain, const std::vector<int>& inputs) {
      std::map<int, Rat> acc;
      auto outer = [&](const std::vector<int>& oc, const std::vector<int>& oi) {
        return F.apply_phi(oc, oi);
      };
      detail::accumulate_lhs(A, d, chain, inputs, outer, acc);
      // RHS: mu_B^r(Phi^{i_r}, ..., Phi^{i_1}) over compositions
      for (const auto& term : rhs_terms(d)) {
        const auto& comp = term.composition;
        // expand the product of Phi outputs chunk by chunk
        std::vector<std::pair<std::vector<int>, Rat>> partial = {{{}, Rat(1)}};
        int start = 0;
        for (int len : comp) {
          std::vector<int> cchain(chain.begin() + start, chain.begin() + start + len + 1);
          std::vector<int> cin(inputs.begin() + start, inputs.begin() + start + len);
          const auto* out = F.apply_phi(cchain, cin);
          std::vector<std::pair<std::vector<int>, Rat>> next;
          if (out)
            for (const auto& [b, c] : *out)
              for (const auto& [pref, pc] : partial) {
                auto v = pref;
                v.push_back(b);
                next.emplace_back(std::move(v), pc * c);
              }
          partial = std::move(next);
          start += len;
        }
        if (partial.empty()) continue;
        // chain in the target category
        std::vector<int> bchain;
        int pos = 0;
        bchain.push_back(F.object_map[static_cast<size_t>(chain[0])]);
        for (int len : comp) {
          pos += len;
          bchain.push_back(F.object_map[static_cast<size_t>(chain[static_cast<size_t>(pos)])]);
        }
        for (const auto& [phis, coeff] : partial) {
          const auto* res = B.apply_mu(bchain, phis);
          if (!res) continue;
          for (const auto& [b_out, c2] : *res) acc[b_out] -= coeff * c2;
        }
      }
      for (auto& [b, c] : acc) {
        if (mod2) c = detail::reduce_mod2(c);
        Rat a = c < Rat(0) ? -c : c;
        if (a > worst) worst = a;
      }
    });
    residuals.push_back(worst);
  }
  return residuals;
}

// ---------------------------------------------------------------------------
// DGA helpers
// ---------------------------------------------------------------------------

/// Build single-object A-infinity data from a DGA (differential + associative
/// product satisfying Leibniz):
///   mu^1(a) = (-1)^{|a|} da,   mu^2(a_2, a_1) = (-1)^{|a_1|} a_2 a_1,
/// all higher maps zero.  With this sign dressing a DGA satisfies the
/// associativity relations on the nose.
struct Dga {
  std::vector<int> degrees;                                ///< basis degrees
  std::map<int, std::map<int, Rat>> diff;                  ///< d: basis -> column
  std::map<std::pair<int, int>, std::map<int, Rat>> prod;  ///< (a,b) -> a*b column
};

inline AInftyData ainfty_from_dga(const Dga& dga) {
  AInftyData A;
  A.objects = {"*"};
  A.hom[{0, 0}] = dga.degrees;
  const int n = static_cast<int>(dga.degrees.size());
  for (int a = 0; a < n; ++a) {
    auto it = dga.diff.find(a);
    if (it != dga.diff.end())
      for (const auto& [b, c] : it->second) {
        Rat sgn = (dga.degrees[static_cast<size_t>(a)] % 2 == 0) ? Rat(1) : Rat(-1);
        A.set_mu({0, 0}, {a}, b, sgn * c);
      }
  }
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2) {
      auto it = dga.prod.find({a2, a1});  // product a2 * a1
      if (it == dga.prod.end()) continue;
      Rat sgn = (dga.degrees[static_cast<size_t>(a1)] % 2 == 0) ? Rat(1) : Rat(-1);
      for (const auto& [b, c] : it->second) A.set_mu({0, 0, 0}, {a1, a2}, b, sgn * c);
    }
  return A;
}

/// Identity functor on single-or-multi object data: Phi^1 = id, higher zero.
inline FunctorData identity_functor(const AInftyData& A) {
  FunctorData F;
  for (size_t o = 0; o < A.objects.size(); ++o) F.object_map.push_back(static_cast<int>(o));
  for (const auto& [key, basis] : A.hom)
    for (int b = 0; b < static_cast<int>(basis.size()); ++b)
      F.set_phi({key.first, key.second}, {b}, b, Rat(1));
  return F;
}

}  // namespace multiquilt
