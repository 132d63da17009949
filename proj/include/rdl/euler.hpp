#pragma once

#include "rdl/ast.hpp"
#include "rdl/syntax.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdl {

struct SideConditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VariableClash : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// x1'=v1, ..., with the clock pair (tau,1) present.
using OdeSystem = std::vector<OdePair>;

std::vector<std::string> ode_vars(const OdeSystem& sys);
std::vector<TermPtr> ode_var_terms(const OdeSystem& sys);

/// Unsimplified syntactic derivative: d(a*b) = a*db + da*b.
TermPtr poly_derivative(const TermPtr& v, const std::string& x);

/// forall x in [-(k+2), k+2] ... (|v| < m & |Dv| < l), the quantifiers over
/// every system variable.  Each column sum of |dv_i/dx_j| < l is expanded
/// into one strict comparison per sign pattern of the non-constant entries;
/// constant entries contribute their absolute value directly.
FormulaPtr build_beta(const OdeSystem& sys, const TermPtr& k, const TermPtr& m, const TermPtr& l);

/// forall y1 in [x1-eps, x1+eps] ... f[x:=y].  Variables of xs that are not
/// free in f get no quantifier.  When f has modalities the replacement is
/// done by prefixing <x1:=y1>...<xn:=yn>.  The y are fresh w.r.t. `avoid`.
FormulaPtr eps_interior(const FormulaPtr& f, const std::vector<std::string>& xs, const std::string& eps,
                        const VarSet& avoid = {});

/// Reserved names for one Euler instantiation.
struct EulerNames {
    std::string h, m, l, eps;
    std::vector<std::string> snap;  // one per system variable
};
EulerNames fresh_euler_names(const VarSet& used, std::size_t n);

/// ?(|x| < k - eps); s := x; x := s + h v[x:=s]; eps := (1 + h l) eps + (l m / 2) h^2
ProgramPtr build_euler_step(const OdeSystem& sys, const TermPtr& k, const TermPtr& h, const TermPtr& m,
                            const TermPtr& l, const std::string& eps, const std::vector<std::string>& snap);

struct AxiomPair {
    FormulaPtr lhs, rhs;
    std::optional<FormulaPtr> guard;  // side premise, when the instance needs one
};

/// <x'=v & rho & |x|<k> phi  <->  exists m (m>0 & exists l (l>0 & (beta &
///   exists h (h>0 & <eps:=0; {?int(rho); eta}*>(int(phi) & 1 > eps)))))
AxiomPair instantiate_diaode(const OdeSystem& sys, const FormulaPtr& rho, const TermPtr& k, const FormulaPtr& phi,
                             const EulerNames& names);

/// [x'=v & psi & |x|<=k] phi  <->  <x'=v & phi | tau>k>(!(psi & |x|<=k) | tau>k).
/// The norm includes the clock, so the domain already implies tau <= k and the
/// boundedness guard holds trivially.
AxiomPair instantiate_odedual_norm(const OdeSystem& sys, const FormulaPtr& psi, const TermPtr& k,
                                   const FormulaPtr& phi);

/// [x'=v & psi & theta >= tau] phi  <->  <x'=v & phi | tau>theta>(!psi | tau>theta),
/// guard forall x (!psi | |x|<=k) over the non-clock variables.
AxiomPair instantiate_odedual(const OdeSystem& sys, const FormulaPtr& psi, const TermPtr& theta, const TermPtr& k,
                              const FormulaPtr& phi);

/// <x'=v & rho> phi  <->  exists y <x'=v & rho & |x|<y> phi
AxiomPair instantiate_diaodebound(const OdeSystem& sys, const FormulaPtr& rho, const FormulaPtr& phi,
                                  const std::string& y);

/// <x'=v & rho> phi  <->  exists t0 (<x'=v>(phi & tau=t0) & [x'=v & t0>=tau] rho)
AxiomPair instantiate_evd(const OdeSystem& sys, const FormulaPtr& rho, const FormulaPtr& phi, const std::string& t0);

// ---- numerics (testing only) ----

using NumState = std::map<std::string, double>;

double eval_double(const TermPtr& t, const NumState& s);

/// Fixed-step RK4; returns the ceil(T/step) states after each step, the last
/// one at time T.
std::vector<NumState> numeric_flow(const OdeSystem& sys, const NumState& x0, double T, double step,
                                   double cap = 1e12);

}  // namespace rdl
