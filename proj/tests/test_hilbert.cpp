#include <doctest.h>

#include "generators.hpp"
#include "tglp/error.hpp"
#include "tglp/hilbert.hpp"
#include "tglp/io.hpp"
#include "tglp/kripke.hpp"

using namespace tglp;

namespace {

Formula parse(const char* s) { return parse_formula(s); }
Ordinal ord(const char* s) { return parse_ordinal(s); }

HilbertProof corpus_proof(const std::string& name) {
  return proof_from_json(read_json_file(std::string(TGLP_CORPUS_DIR) + "/" + name + ".json"));
}

HilbertProof proof_of(ProofSystem system, std::vector<ProofLine> lines) {
  HilbertProof p;
  p.system = system;
  p.lines = std::move(lines);
  return p;
}

}  // namespace

TEST_CASE("is_tautology") {
  CHECK(is_tautology(parse("<w>p -> <w>p")));
  CHECK_FALSE(is_tautology(parse("[0]p -> p")));
  CHECK(is_tautology(parse("([0]p & ([0]p -> q)) -> q")));
  CHECK(is_tautology(parse("T")));
  CHECK_FALSE(is_tautology(parse("F")));
  CHECK(is_tautology(parse("p | ~p")));
  CHECK_FALSE(is_tautology(parse("[0]p -> [1]p")));
  // [0]p and [0]~~p are different atoms.
  CHECK_FALSE(is_tautology(parse("[0]p -> [0]~~p")));
}

TEST_CASE("recognize_axiom in GLP_prec") {
  const auto sys = ProofSystem::GlpPrec;
  CHECK(recognize_axiom(parse("[w]([w]p -> p) -> [w]p"), sys) == Schema::Loeb);
  CHECK(recognize_axiom(parse("<w>p -> <1>p"), sys) == Schema::Monotone);
  CHECK_FALSE(recognize_axiom(parse("<1>p -> <w>p"), sys));
  CHECK(recognize_axiom(parse("<w>p -> [w^w]<w>p"), sys) == Schema::NegIntrospect);
  CHECK_FALSE(recognize_axiom(parse("<w^w>p -> [w]<w^w>p"), sys));
  CHECK(recognize_axiom(parse("[w+1](p -> q) -> ([w+1]p -> [w+1]q)"), sys) == Schema::K);
  CHECK_FALSE(recognize_axiom(parse("[1](p -> q) -> ([0]p -> [0]q)"), sys));
  CHECK(recognize_axiom(parse("p -> p"), sys) == Schema::Tautology);
  CHECK_FALSE(recognize_axiom(parse("[0]p -> [1][0]p"), sys));
}

TEST_CASE("recognize_axiom in the other systems") {
  CHECK_FALSE(recognize_axiom(parse("[w]([w]p -> p) -> [w]p"), ProofSystem::GlpOmega));
  CHECK(recognize_axiom(parse("[2]([2]p -> p) -> [2]p"), ProofSystem::GlpOmega) == Schema::Loeb);

  CHECK(recognize_axiom(parse("[0]p -> [1][0]p"), ProofSystem::J) == Schema::J6);
  CHECK(recognize_axiom(parse("[1]p -> [1][1]p"), ProofSystem::J) == Schema::J6);
  CHECK_FALSE(recognize_axiom(parse("[1]p -> [0][1]p"), ProofSystem::J));
  CHECK(recognize_axiom(parse("[0]p -> [0][1]p"), ProofSystem::J) == Schema::J7);
  CHECK_FALSE(recognize_axiom(parse("<1>p -> <0>p"), ProofSystem::J));
  CHECK(recognize_axiom(parse("<0>p -> [1]<0>p"), ProofSystem::J) == Schema::NegIntrospect);

  CHECK(recognize_axiom(parse("[0]p -> [1]p"), ProofSystem::GlBlack) == Schema::GLB1);
  CHECK(recognize_axiom(parse("[1](p -> q) -> ([1]p -> [1]q)"), ProofSystem::GlBlack) == Schema::GLB2);
  CHECK(recognize_axiom(parse("[1]p -> [1][1]p"), ProofSystem::GlBlack) == Schema::GLB3);
  CHECK(recognize_axiom(parse("[0]([0]p -> p) -> [0]p"), ProofSystem::GlBlack) == Schema::Loeb);
  CHECK_FALSE(recognize_axiom(parse("[1]([1]p -> p) -> [1]p"), ProofSystem::GlBlack));
  CHECK_FALSE(recognize_axiom(parse("[2]p -> [2][2]p"), ProofSystem::GlBlack));
}

TEST_CASE("recognize_axiom is stable under variable renaming") {
  const std::vector<const char*> axioms{"[w](p -> q) -> ([w]p -> [w]q)", "[1]([1]p -> p) -> [1]p",
                                        "<w>p -> <0>p", "<1>(p & q) -> [w]<1>(p & q)"};
  const Substitution rename{{"p", Formula::var("r")}, {"q", Formula::var("s")}};
  for (const char* text : axioms) {
    const auto f = parse(text);
    CHECK(recognize_axiom(f, ProofSystem::GlpPrec) == recognize_axiom(substitute(f, rename), ProofSystem::GlpPrec));
  }
}

TEST_CASE("check_proof accepts and rejects") {
  CHECK(check_proof(proof_of(ProofSystem::GlpPrec, {{parse("[w]([w]p -> p) -> [w]p"), AxiomRule{Schema::Loeb}}})));
  CHECK(check_proof(proof_of(ProofSystem::GlpPrec, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                                    {parse("[0](p -> p)"), Necessitation{0, ord("0")}}})));

  auto mismatch = proof_of(ProofSystem::GlpOmega, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                                   {parse("(q -> q) -> (p -> p)"), AxiomRule{Schema::Tautology}},
                                                   {parse("p -> p"), ModusPonens{0, 1}}});
  auto r = check_proof(mismatch);
  CHECK_FALSE(r.accepted);
  CHECK(r.line == 2);
  CHECK(r.reason == "mp-mismatch");

  CHECK(check_proof(HilbertProof{}).reason == "empty-proof");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("[w]p -> [w]p"), AxiomRule{Schema::Tautology}}})).reason ==
        "index-out-of-system");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("[0]p -> [1][0]p"), AxiomRule{Schema::J6}}})).reason ==
        "unknown-schema");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("[0]p -> p"), AxiomRule{Schema::Tautology}}})).reason ==
        "not-axiom");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("p"), HypothesisRule{}}})).reason == "hyp-undeclared");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                                     {parse("[0](p -> p)"), Necessitation{1, ord("0")}}}))
            .reason == "bad-reference");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                                     {parse("[1](p -> p)"), Necessitation{0, ord("0")}}}))
            .reason == "nec-mismatch");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                                     {parse("[w](p -> p)"), Necessitation{0, ord("w")}}}))
            .reason == "index-out-of-system");
  CHECK(check_proof(proof_of(ProofSystem::GlpOmega, {{parse("[0]p -> p"), HypothesisRule{}}, {parse("p"), LoebRule{0, {}}}}))
            .reason == "hyp-undeclared");

  HilbertProof loeb_elsewhere = proof_of(ProofSystem::GlpOmega, {{parse("[0]p -> p"), HypothesisRule{}},
                                                                 {parse("p"), LoebRule{0, {}}}});
  loeb_elsewhere.hypotheses = {parse("[0]p -> p")};
  CHECK(check_proof(loeb_elsewhere).reason == "rule-not-allowed");

  HilbertProof wrong_flavor = proof_of(ProofSystem::GlBlack, {{parse("[1]p -> p"), HypothesisRule{}},
                                                              {parse("p"), LoebRule{0, ord("1")}}});
  wrong_flavor.hypotheses = {parse("[1]p -> p")};
  CHECK(check_proof(wrong_flavor).reason == "loeb-flavor");

  HilbertProof wrong_shape = proof_of(ProofSystem::GlBlack, {{parse("[1]p -> p"), HypothesisRule{}},
                                                             {parse("p"), LoebRule{0, {}}}});
  wrong_shape.hypotheses = {parse("[1]p -> p")};
  CHECK(check_proof(wrong_shape).reason == "loeb-mismatch");
}

TEST_CASE("corpus derivations check") {
  for (const char* name : {"four-axiom", "box-monotone", "glblack-loeb-rule", "axiom-loeb", "j-axiom-6"}) {
    INFO(name);
    CHECK(check_proof(corpus_proof(name)).accepted);
  }
  CHECK(corpus_proof("four-axiom").conclusion() == parse("[0]p -> [0][0]p"));
  CHECK(corpus_proof("box-monotone").conclusion() == parse("[0]p -> [1]p"));
  CHECK(corpus_proof("glblack-loeb-rule").conclusion() == parse("p"));
}

TEST_CASE("lift_proof") {
  auto lifted = lift_proof(proof_of(ProofSystem::GlpOmega, {{parse("<1>p -> <0>p"), AxiomRule{Schema::Monotone}}}),
                           CondensationMap({ord("1"), ord("w")}));
  CHECK(lifted.system == ProofSystem::GlpPrec);
  CHECK(lifted.conclusion() == parse("<w>p -> <1>p"));
  CHECK(check_proof(lifted));

  auto nec = proof_of(ProofSystem::GlpOmega, {{parse("p -> p"), AxiomRule{Schema::Tautology}},
                                              {parse("[0](p -> p)"), Necessitation{0, ord("0")}}});
  auto nec_lifted = lift_proof(nec, CondensationMap({ord("w")}));
  CHECK(nec_lifted.conclusion() == parse("[w](p -> p)"));
  CHECK(check_proof(nec_lifted));

  auto uses_two = proof_of(ProofSystem::GlpOmega, {{parse("[2]p -> [2]p"), AxiomRule{Schema::Tautology}}});
  CHECK_THROWS_AS(lift_proof(uses_two, CondensationMap({ord("0"), ord("1")})), RangeError);
  CHECK_THROWS_AS(lift_proof(lifted, CondensationMap({ord("0")})), RangeError);

  for (const char* name : {"four-axiom", "box-monotone"}) {
    for (const auto& levels : {std::vector<Ordinal>{ord("1"), ord("w")}, std::vector<Ordinal>{ord("w"), ord("w^w")},
                               std::vector<Ordinal>{ord("3"), ord("w^(w+1)*2")}}) {
      INFO(name);
      CHECK(check_proof(lift_proof(corpus_proof(name), CondensationMap(levels))).accepted);
    }
  }
}

TEST_CASE("accepted J proofs are valid on small J-models") {
  // Every line of every proof must hold everywhere.
  std::vector<HilbertProof> proofs{corpus_proof("j-axiom-6"), corpus_proof("j-axiom-7"),
                                   corpus_proof("axiom-neg-introspect")};
  auto k_then_mp = proof_of(ProofSystem::J, {{parse("[0]p -> [1][0]p"), AxiomRule{Schema::J6}},
                                             {parse("[1]([0]p -> [1][0]p)"), Necessitation{0, ord("1")}},
                                             {parse("[1]([0]p -> [1][0]p) -> ([1][0]p -> [1][1][0]p)"),
                                              AxiomRule{Schema::K}},
                                             {parse("[1][0]p -> [1][1][0]p"), ModusPonens{1, 2}}});
  REQUIRE(check_proof(k_then_mp));
  proofs.push_back(k_then_mp);
  for (auto& p : proofs) p.system = ProofSystem::J;

  EnumerationOptions opts;
  opts.max_worlds = 3;
  opts.relations = 2;
  opts.variables = {"p"};
  std::size_t models = 0;
  for_each_model(opts, [&](const JModel& m) {
    ++models;
    for (const auto& p : proofs) {
      REQUIRE(check_proof(p));
      for (const auto& line : p.lines) CHECK(valid_on(m, line.formula));
    }
    return true;
  });
  CHECK(models > 100);
}
