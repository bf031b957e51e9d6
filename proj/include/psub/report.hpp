#ifndef PSUB_REPORT_HPP
#define PSUB_REPORT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "groupfile.hpp"
#include "homology.hpp"
#include "iso.hpp"
#include "plattice.hpp"
#include "poset.hpp"

namespace psub
{

/// The two families of (G, p) and their posets, computed once and shared
/// by the filters and the report.
struct PrimeContext
{
  Group const *group = nullptr;
  unsigned p = 0;
  PSubgroupFamily subgroups;
  PSubgroupFamily tori;
  Poset sp;
  Poset ap;

  static PrimeContext build(Group const &G, unsigned p)
  {
    PrimeContext c;
    c.group = &G;
    c.p = p;
    c.subgroups = enumerate_p_subgroups(G, p);
    c.tori = p_tori_of(c.subgroups);
    c.sp = build_poset(c.subgroups);
    c.ap = build_poset(c.tori);
    return c;
  }
  /// The context keeps a pointer to G.
  static PrimeContext build(Group &&, unsigned) = delete;
};

/// G of order 2m (m >= 2) with a cyclic subgroup of index 2 inverted by
/// an involution outside it.
inline bool is_dihedral(Group const &G)
{
  std::size_t const n = G.order();
  if (n < 4 || n % 2 != 0)
    return false;
  std::size_t const m = n / 2;
  for (ElementIndex c = 0; c < n; ++c) {
    if (G.element_order(c) != m)
      continue;
    ElementIndex gen[] = {c};
    Subgroup C = generate(G, gen);
    ElementIndex c_inv = G.inv(c);
    for (ElementIndex s = 0; s < n; ++s)
      if (G.element_order(s) == 2 && !C.contains(s) && G.conj(s, c) == c_inv)
        return true;
    // every element of order m generates a cyclic subgroup of index 2, and
    // an inverting involution works for all generators of C at once
    return false;
  }
  return false;
}

struct PropAVerdict
{
  /// First case that applies (1..4), or empty.
  std::optional<unsigned> case_hit;
  /// Omega_1(P) abelian for every Sylow P, i.e. A_p is a strong
  /// deformation retract of S_p.
  bool retract = false;
};

/// Sufficient conditions for S_p(G) and A_p(G) to have the same homotopy
/// type, tried in order:
///   1. Omega_1(P) is abelian for every Sylow p-subgroup P;
///   2. A_p(G) has height 0;
///   3. G is dihedral;
///   4. |G| = p^a q with q a prime other than p.
inline PropAVerdict filter_propA(PrimeContext const &ctx)
{
  Group const &G = *ctx.group;
  unsigned const p = ctx.p;
  PropAVerdict v;
  v.retract = true;
  for (auto const &P : sylow_subgroups(ctx.subgroups))
    if (!is_abelian(G, omega1(G, P, p))) {
      v.retract = false;
      break;
    }
  if (v.retract)
    v.case_hit = 1;
  else if (height(ctx.ap) == 0)
    v.case_hit = 2;
  else if (is_dihedral(G))
    v.case_hit = 3;
  else {
    std::size_t rest = G.order() / p_part(G.order(), p);
    if (rest != 1 && is_prime(rest))
      v.case_hit = 4;
  }
  return v;
}

inline PropAVerdict filter_propA(Group const &G, unsigned p)
{
  return filter_propA(PrimeContext::build(G, p));
}

/// Sufficient conditions for "S_p(G) contractible => A_p(G) contractible":
///   1. all maximal p-tori are conjugate;
///   2. A_p(G) has height at most 1;
///   3. |G|_p <= p^3.
inline std::optional<unsigned> filter_propB(PrimeContext const &ctx)
{
  Group const &G = *ctx.group;
  if (tori_all_conjugate(G, maximal_tori(ctx.tori)))
    return 1u;
  if (height(ctx.ap) <= 1)
    return 2u;
  if (p_power_exponent(p_part(G.order(), ctx.p), ctx.p) <= 3)
    return 3u;
  return std::nullopt;
}

inline std::optional<unsigned> filter_propB(Group const &G, unsigned p)
{
  return filter_propB(PrimeContext::build(G, p));
}

struct HomotopyReport
{
  std::string name;
  std::size_t order = 0;
  unsigned p = 0;
  std::size_t p_part = 0;
  std::size_t sp_size = 0;
  std::size_t ap_size = 0;
  std::size_t sp_core = 0;
  std::size_t ap_core = 0;
  bool same_type = false;
  std::size_t op_order = 0;
  bool sp_contractible = false;
  bool ap_contractible = false;
  bool steps_computed = false;
  std::optional<std::size_t> ap_steps;
  std::size_t sp_height = 0;
  std::size_t ap_height = 0;
  /// step_predicate at n = 0..3; empty when steps were skipped.
  std::array<std::optional<bool>, 4> predicates;
  PropAVerdict propA;
  std::optional<unsigned> propB;
  std::int64_t sp_euler = 0;
  std::int64_t ap_euler = 0;
  std::optional<HomologySummary> sp_homology;
  std::optional<HomologySummary> ap_homology;

  /// "stong" when S_p is contractible, A_p is not and no filter B case
  /// applies; otherwise "homotopy" when no filter A case applies and the
  /// spaces differ; empty otherwise.
  std::string candidate() const
  {
    if (sp_contractible && !ap_contractible && !propB)
      return "stong";
    if (!propA.case_hit && !same_type)
      return "homotopy";
    return {};
  }
};

struct AnalyzeOptions
{
  bool skip_homology = false;
  bool skip_steps = false;
};

inline HomotopyReport analyze(PrimeContext const &ctx, std::string name,
                              AnalyzeOptions const &opt = {})
{
  Group const &G = *ctx.group;
  HomotopyReport r;
  r.name = std::move(name);
  r.order = G.order();
  r.p = ctx.p;
  r.p_part = p_part(G.order(), ctx.p);
  r.sp_size = ctx.sp.size();
  r.ap_size = ctx.ap.size();

  Poset const sp_core = core(ctx.sp).first;
  Poset const ap_core = core(ctx.ap).first;
  r.sp_core = sp_core.size();
  r.ap_core = ap_core.size();
  r.same_type = poset_iso(sp_core, ap_core).has_value();
  r.op_order = o_p(G, sylow_subgroups(ctx.subgroups)).order;
  r.sp_contractible = r.sp_core == 1;
  r.ap_contractible = r.ap_core == 1;
  r.sp_height = height(ctx.sp);
  r.ap_height = height(ctx.ap);

  if (!opt.skip_steps) {
    r.steps_computed = true;
    r.ap_steps = steps_to_contract(ctx.ap);
    for (unsigned n = 0; n < 4; ++n)
      r.predicates[n] = step_predicate(ctx.tori, n);
  }
  r.propA = filter_propA(ctx);
  r.propB = filter_propB(ctx);
  r.sp_euler = euler_char(ctx.sp);
  r.ap_euler = euler_char(ctx.ap);
  if (!opt.skip_homology) {
    r.sp_homology = reduced_homology(order_complex(sp_core));
    r.ap_homology = reduced_homology(order_complex(ap_core));
  }
  return r;
}

inline HomotopyReport analyze(Group const &G, std::string name, unsigned p,
                              AnalyzeOptions const &opt = {})
{
  return analyze(PrimeContext::build(G, p), std::move(name), opt);
}

inline HomotopyReport analyze(GroupFile const &file, unsigned p,
                              AnalyzeOptions const &opt = {})
{
  Group G = file.to_group();
  return analyze(PrimeContext::build(G, p), file.name, opt);
}

/// Descriptions of every report invariant that fails; empty when sound.
inline std::vector<std::string> report_violations(HomotopyReport const &r)
{
  std::vector<std::string> bad;
  if (r.sp_contractible != (r.op_order > 1))
    bad.push_back("S_p contractible differs from O_p(G) > 1");
  if (r.ap_contractible && !r.sp_contractible)
    bad.push_back("A_p contractible but S_p is not");
  if (r.propA.case_hit && !r.same_type)
    bad.push_back("filter A case " + std::to_string(*r.propA.case_hit) +
                  " applies but the homotopy types differ");
  if (r.propB && r.sp_contractible && !r.ap_contractible)
    bad.push_back("filter B case " + std::to_string(*r.propB) +
                  " applies but A_p is not contractible");
  std::int64_t const pp = static_cast<std::int64_t>(r.p_part);
  if (((r.sp_euler - 1) % pp + pp) % pp != 0)
    bad.push_back("chi(S_p) = " + std::to_string(r.sp_euler) + " is not 1 mod " +
                  std::to_string(r.p_part));
  if (r.steps_computed) {
    if (r.ap_steps.has_value() != r.ap_contractible)
      bad.push_back("steps disagree with the core of A_p");
    for (unsigned n = 0; n < 4; ++n)
      if (r.predicates[n] && *r.predicates[n] != (r.ap_steps && *r.ap_steps <= n))
        bad.push_back("step predicate at n = " + std::to_string(n) +
                      " disagrees with the i/s sequence");
  }
  return bad;
}

enum class PosetView { sp, ap, core_sp, core_ap, i_ap };

inline std::optional<PosetView> parse_poset_view(std::string_view s)
{
  if (s == "Sp")
    return PosetView::sp;
  if (s == "Ap")
    return PosetView::ap;
  if (s == "core_Sp")
    return PosetView::core_sp;
  if (s == "core_Ap")
    return PosetView::core_ap;
  if (s == "i_Ap")
    return PosetView::i_ap;
  return std::nullopt;
}

/// The requested poset; labels index into the matching family of ctx.
inline Poset select_view(PrimeContext const &ctx, PosetView view)
{
  switch (view) {
  case PosetView::sp:
    return ctx.sp;
  case PosetView::ap:
    return ctx.ap;
  case PosetView::core_sp:
    return core(ctx.sp).first;
  case PosetView::core_ap:
    return core(ctx.ap).first;
  case PosetView::i_ap:
    return i_op(ctx.ap);
  }
  return {};
}

/// `order=p^k, gens=(..) (..)` with 1-based cycles.
inline std::string subgroup_summary(Group const &G, unsigned p, Subgroup const &S,
                                    std::vector<ElementIndex> const &gens)
{
  std::string out = "order=" + std::to_string(p) + "^" +
                    std::to_string(p_power_exponent(S.order, p)) + ", gens=";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i)
      out += ' ';
    out += G.element(gens[i]).to_cycle_string();
  }
  return out;
}

inline std::string export_dot(PrimeContext const &ctx, PosetView view,
                              std::string const &graph_name = "poset")
{
  bool const subgroups = view == PosetView::sp || view == PosetView::core_sp;
  PSubgroupFamily const &F = subgroups ? ctx.subgroups : ctx.tori;
  Poset X = select_view(ctx, view);
  return to_dot(
    X,
    [&](std::size_t i) {
      std::size_t m = X.label(i);
      return subgroup_summary(*ctx.group, ctx.p, F.members[m], F.generators[m]);
    },
    graph_name);
}

} // namespace psub

#endif // PSUB_REPORT_HPP
