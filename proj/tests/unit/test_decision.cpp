#include <gtest/gtest.h>

#include "cbd/analysis.hpp"
#include "cbd/coupling.hpp"
#include "cbd/decision.hpp"
#include "cbd/documents.hpp"
#include "cbd/format.hpp"
#include "cbd/gallery.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

using namespace cbd;
using cbd::testkit::Rng;

namespace {

// Independent product of the context tables: each context drawn on its own.
SystemCoupling product_of_contexts(const System& s) {
  const auto cells = s.cells();
  const std::size_t n = cells.size();
  std::map<TupleIndex, Rational> table{{0, Rational(1)}};
  for (const auto& ctx : s.contexts()) {
    std::map<TupleIndex, Rational> next;
    for (const auto& [atom, mass] : table) {
      for (TupleIndex t = 0; t < ctx.table().size(); ++t) {
        if (ctx.table()[t].value() == 0) continue;
        TupleIndex a = atom;
        for (std::size_t i = 0; i < ctx.arity(); ++i) {
          if (outcome_at(t, ctx.arity(), i) == Outcome::minus) {
            const auto it = std::find(cells.begin(), cells.end(), Cell{ctx.properties()[i], ctx.id()});
            a |= TupleIndex{1} << (n - 1 - static_cast<std::size_t>(it - cells.begin()));
          }
        }
        next[a] += mass * ctx.table()[t].value();
      }
    }
    table = std::move(next);
  }
  return {cells, table};
}

System point_mass_system() {
  // Every measurement deterministic, with q's value differing between contexts.
  const auto one = [](TupleIndex t, std::size_t m) {
    std::vector<Probability> v(std::size_t{1} << m);
    v[t] = Probability::one();
    return v;
  };
  return System("points", {ContextDistribution(ContextId("c1"), {PropertyId("q"), PropertyId("r")}, one(1, 2)),
                           ContextDistribution(ContextId("c2"), {PropertyId("q")}, one(1, 1))});
}

}  // namespace

TEST(CouplingLP, KcbsShape) {
  const auto lp = build_lp(build_kcbs(), Mode::cbd);
  EXPECT_EQ(lp.cell_count(), 10u);
  EXPECT_EQ(lp.columns(), 1024u);
  EXPECT_EQ(lp.rows(), 26u);  // 1 + 5 * 4 + 5
  std::vector<std::size_t> rows;
  for (std::size_t atom = 0; atom < lp.columns(); ++atom) {
    lp.column(atom, rows);
    for (std::size_t r = 0; r < lp.rows(); ++r) {
      EXPECT_EQ(std::binary_search(rows.begin(), rows.end(), r), lp.coefficient(r, atom));
    }
  }
}

TEST(CouplingLP, SingleContext) {
  const System s("one", {ContextDistribution(ContextId("c"), {PropertyId("a"), PropertyId("b")},
                                             std::vector<Probability>(4, Probability(Rational(1, 4))))});
  const auto lp = build_lp(s, Mode::cbd);
  EXPECT_EQ(lp.rows(), 5u);
  const auto v = decide(s, Mode::cbd);
  EXPECT_FALSE(v.contextual);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(testkit::is_valid_coupling(s, Mode::cbd, *v.witness));
}

TEST(CouplingLP, SizeLimit) {
  // 36 cells, over the default limit of 20.
  std::vector<ContextDistribution> contexts;
  for (int c = 0; c < 9; ++c) {
    std::vector<PropertyId> props;
    for (int i = 0; i < 4; ++i) props.emplace_back("q" + std::to_string((c * 2 + i) % 18));
    std::vector<Probability> t(16);
    t[0] = Probability::one();
    contexts.emplace_back(ContextId("c" + std::to_string(c)), props, t);
  }
  const System big("big", contexts);
  try {
    build_lp(big, Mode::cbd);
    FAIL();
  } catch (const SizeLimitError& e) {
    EXPECT_EQ(e.size(), 36u);
    EXPECT_EQ(e.limit(), 20u);
    EXPECT_NE(std::string(e.what()).find("36"), std::string::npos);
  }
  EXPECT_THROW(decide(big, Mode::cbd), SizeLimitError);
}

TEST(Decide, EprBbIsContextual) {
  const System s = build_epr_bb();
  for (Mode mode : {Mode::cbd, Mode::traditional}) {
    const auto v = decide(s, mode);
    EXPECT_TRUE(v.contextual);
    ASSERT_TRUE(v.certificate);
    EXPECT_FALSE(v.witness);
    EXPECT_TRUE(verify_certificate(s, mode, *v.certificate));
    EXPECT_TRUE(testkit::is_valid_certificate(build_lp(s, mode), *v.certificate));
  }
}

TEST(Decide, PointMassWitness) {
  const System s = point_mass_system();
  const auto v = decide(s, Mode::cbd);
  EXPECT_FALSE(v.contextual);
  ASSERT_TRUE(v.witness);
  ASSERT_EQ(v.witness->table.size(), 1u);
  EXPECT_EQ(v.witness->table.begin()->second, 1);
  EXPECT_TRUE(testkit::is_valid_coupling(s, Mode::cbd, *v.witness));
  // Inconsistent connectedness is contextual in the traditional sense.
  EXPECT_TRUE(decide(s, Mode::traditional).contextual);
}

TEST(VerifyWitness, RejectsPerturbedAndProductCouplings) {
  const System s = build_kcbs({{Rational(1, 2), Rational(1, 2), Rational(-3, 5)}});
  const auto v = decide(s, Mode::cbd);
  ASSERT_FALSE(v.contextual);
  EXPECT_TRUE(verify_witness(s, Mode::cbd, *v.witness));
  EXPECT_TRUE(testkit::is_valid_coupling(s, Mode::cbd, *v.witness));

  auto perturbed = *v.witness;
  auto it = perturbed.table.begin();
  it->second += Rational(1, 1000);
  std::next(it)->second -= Rational(1, 1000);
  EXPECT_FALSE(verify_witness(s, Mode::cbd, perturbed));
  EXPECT_FALSE(testkit::is_valid_coupling(s, Mode::cbd, perturbed));

  const auto product = product_of_contexts(s);
  EXPECT_FALSE(verify_witness(s, Mode::cbd, product));
  EXPECT_FALSE(testkit::is_valid_coupling(s, Mode::cbd, product));

  auto wrong_cells = *v.witness;
  wrong_cells.cells.pop_back();
  EXPECT_THROW(verify_witness(s, Mode::cbd, wrong_cells), DimensionError);
}

TEST(VerifyCertificate, RejectsWrongCertificates) {
  const System s = build_kcbs();
  const auto v = decide(s, Mode::cbd);
  ASSERT_TRUE(v.contextual);
  EXPECT_TRUE(verify_certificate(s, Mode::cbd, *v.certificate));
  FarkasCertificate zero{std::vector<Rational>(v.certificate->multipliers.size())};
  EXPECT_FALSE(verify_certificate(s, Mode::cbd, zero));
  // Against a noncontextual system with the same row layout it must fail.
  const System weak = build_kcbs({{Rational(1, 2), Rational(1, 2), Rational(-1, 2)}});
  EXPECT_FALSE(verify_certificate(weak, Mode::cbd, *v.certificate));
  EXPECT_THROW(verify_certificate(build_epr_bb(), Mode::cbd, *v.certificate), DimensionError);
}

TEST(Decide, WitnessRestrictsToStaircase) {
  Rng rng(59);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 30; ++trial) {
    const System s = testkit::random_system(rng, 10);
    const auto v = decide(s, Mode::cbd);
    if (v.contextual) continue;
    ++checked;
    for (const auto& c : connections(s)) {
      EXPECT_EQ(restrict_to_connection(*v.witness, c), construct_multimaximal(c).table);
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(DecideProperty, VerdictsCarryValidEvidence) {
  Rng rng(61);
  int contextual = 0, noncontextual = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const System s = trial % 2 ? testkit::random_system(rng, 10) : testkit::random_consistent_system(rng, 10);
    for (Mode mode : {Mode::cbd, Mode::traditional}) {
      const auto v = decide(s, mode);
      EXPECT_NE(v.witness.has_value(), v.certificate.has_value());
      if (v.contextual) {
        ++contextual;
        EXPECT_TRUE(testkit::is_valid_certificate(build_lp(s, mode), *v.certificate));
        EXPECT_TRUE(verify_certificate(s, mode, *v.certificate));
      } else {
        ++noncontextual;
        EXPECT_TRUE(testkit::is_valid_coupling(s, mode, *v.witness)) << serialize_system(s);
        EXPECT_TRUE(verify_witness(s, mode, *v.witness));
      }
    }
  }
  EXPECT_GT(contextual, 0);
  EXPECT_GT(noncontextual, 0);
}

TEST(DecideProperty, InvariantUnderFlipAndContextOrder) {
  Rng rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const System s = testkit::random_system(rng, 10);
    const bool base = decide(s, Mode::cbd).contextual;
    const auto props = s.properties();
    const auto& q = props[static_cast<std::size_t>(testkit::uniform_int(rng, 0, static_cast<long>(props.size()) - 1))];
    EXPECT_EQ(decide(flip_property(s, q), Mode::cbd).contextual, base);
    std::vector<ContextDistribution> reversed(s.contexts().rbegin(), s.contexts().rend());
    EXPECT_EQ(decide(System(s.name(), reversed), Mode::cbd).contextual, base);
  }
}

TEST(Analysis, CyclicSystemsGetBothMethods) {
  const Mode modes[] = {Mode::cbd, Mode::traditional};
  const auto a = analyze(build_kcbs(), modes);
  ASSERT_TRUE(a.cyclic);
  ASSERT_EQ(a.modes.size(), 2u);
  for (const auto& m : a.modes) {
    EXPECT_TRUE(m.contextual);
    EXPECT_EQ(m.formula, std::optional<bool>(true));
    ASSERT_TRUE(m.lp);
    EXPECT_TRUE(m.lp->contextual);
  }
}

TEST(Analysis, LargeCyclicUsesFormulaOnly) {
  std::vector<PropertyId> props;
  std::vector<ContextId> ctxs;
  for (int i = 1; i <= 11; ++i) {
    props.push_back(testkit::prop(static_cast<std::size_t>(i)));
    ctxs.push_back(testkit::ctx(static_cast<std::size_t>(i)));
  }
  const System s = build_cyclic("big", props, ctxs, std::vector<PairParams>(11, {Rational(1, 2), Rational(1, 2), Rational(-1)}));
  const Mode modes[] = {Mode::cbd};
  const auto a = analyze(s, modes);
  EXPECT_EQ(a.cells, 22u);
  EXPECT_FALSE(a.modes[0].lp);
  EXPECT_EQ(a.modes[0].formula, std::optional<bool>(true));
  EXPECT_TRUE(a.modes[0].contextual);
}

TEST(Documents, CouplingAndCertificateRoundTrip) {
  const System s = build_kcbs({{Rational(1, 2), Rational(1, 2), Rational(-1, 2)}});
  const auto v = decide(s, Mode::cbd);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(parse_system_coupling(serialize_coupling(*v.witness)), *v.witness);

  const System k = build_kcbs();
  const auto c = decide(k, Mode::cbd);
  const auto text = serialize_certificate(k, build_lp(k, Mode::cbd), *c.certificate);
  EXPECT_EQ(parse_certificate(text).multipliers, c.certificate->multipliers);
}
