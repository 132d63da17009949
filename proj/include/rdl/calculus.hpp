#pragma once

#include "rdl/euler.hpp"
#include "rdl/fragment.hpp"
#include "rdl/oracle.hpp"
#include "rdl/sequent.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdl {

struct PrincipalNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RuleName { RReal, OrR, AndR, ExistsR, ForallR, CutC, StarFinite, ContextRewrite, WeakenL, WeakenR };

enum class AxiomName {
    DiaTest,
    BoxTest,
    DiaChoice,
    BoxChoice,
    DiaSeq,
    BoxSeq,
    DiaStarUnfold,
    BoxStarUnfold,
    DiaAssign,
    BoxAssign,
    ODEDual,
    DiaOde,
    DiaOdeBound,
    EvolutionDomain
};

const char* to_string(RuleName r);
const char* to_string(AxiomName a);
std::optional<RuleName> rule_from_string(const std::string& s);
std::optional<AxiomName> axiom_from_string(const std::string& s);

/// side 0 is the antecedent, 1 the succedent; index is into the canonical
/// order; path descends into the formula (connectives 0/1, quantifier body 0,
/// modality 0 = program and 1 = postcondition; inside programs Test 0,
/// Choice/Seq 0/1, Star 0, Ode 0 = domain).
struct Position {
    int side = 1;
    int index = 0;
    Path path;
    bool operator==(const Position&) const = default;
};

struct RuleInstance {
    RuleName name = RuleName::RReal;
    Position pos;
    TermPtr witness;                  // ExistsR
    std::string fresh;                // ForallR; DiaAssign/BoxAssign z; DiaOdeBound y; EvolutionDomain t0
    int n = 0;                        // StarFinite
    AxiomName axiom = AxiomName::DiaTest;
    bool reverse = false;             // ContextRewrite right-to-left
    FormulaPtr other;                 // reverse: the instance's left side; CutC: the replacement
    std::optional<EulerNames> euler;  // DiaOde
    TermPtr k;                        // ODEDual with an explicit time bound: the state bound of the guard
};

/// Both sides of an axiom instance whose left side is `principal`.
AxiomPair axiom_instance(AxiomName a, const FormulaPtr& principal, const RuleInstance& params);

FormulaPtr subformula_at(const FormulaPtr& f, const Path& p);
FormulaPtr replace_at(const FormulaPtr& f, const Path& p, const FormulaPtr& r);
/// Formula at a position of a sequent; throws PrincipalNotFound.
FormulaPtr principal_of(const Sequent& s, const Position& pos);

/// Forward application: the premises, in order.  R_real yields none (its
/// oracle trace is checked separately).
std::vector<Sequent> apply_rule(const Sequent& s, const RuleInstance& r);

struct ProofNode;
using ProofPtr = std::shared_ptr<ProofNode>;
struct ProofNode {
    Sequent conclusion;
    RuleInstance rule;
    std::vector<ProofPtr> premises;
    TreePtr oracle_trace;  // R_real
};

struct Certificate {
    FormulaPtr goal;
    ProofPtr tree;
};

inline constexpr const char* kCertificateVersion = "rdl-cert/1";

nlohmann::json rule_params_to_json(const RuleInstance& r);
nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

struct CheckResult {
    bool accepted = false;
    std::string reason;
    Path path;  // premise indices from the root to the offending node
};

CheckResult check_certificate(const Certificate& c);
/// Parses and checks; malformed documents are rejected, not thrown.
CheckResult check_certificate_json(const nlohmann::json& j);

std::size_t proof_size(const ProofPtr& p);

}  // namespace rdl
