#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bregman/numerics.hpp"

namespace bregman {

/// Probability arguments of the catalog losses are clamped to
/// [kDefaultClamp, 1 - kDefaultClamp] before entering logs and ratios.
inline constexpr double kDefaultClamp = 1e-12;

/// A proper binary loss bundle. l0/l1 are the partial losses for the events
/// y=0 / y=1, G is the generalized entropy (minimum expected loss) and w the
/// weight function l0'(p)/p = -l1'(p)/(1-p). For non-smooth losses (0-1) the
/// weight fields throw NotSmoothError.
struct ProperLoss {
    std::string name;
    ScalarFn l0;
    ScalarFn l1;
    ScalarFn G;
    ScalarFn G_prime;
    ScalarFn w;
    ScalarFn w_prime;
    bool smooth = true;
};

/// A point mass in a weight "function" (the 0-1 loss has w = 2*delta(p-1/2)).
struct WeightAtom {
    double location;
    double mass;
};

/// Weight density evaluated with both the point and its complement passed
/// exactly: steep weights near the endpoints (boosting) lose the complement
/// to rounding when it is recomputed from c alone.
using ComplementAwareWeight = std::function<double(double c, double one_minus_c)>;

/// A weight function defining a proper loss through integration. Either a
/// density (w, w_prime), a list of atoms, or both. When w_cc is provided it
/// is used for the integration; w remains the plain-density view.
struct WeightSpec {
    std::string name = "custom";
    ScalarFn w;            // density part; may be empty when atoms carry everything
    ScalarFn w_prime;      // optional; finite differences of w are used when empty
    ComplementAwareWeight w_cc;
    std::vector<WeightAtom> atoms;
    double integrability_margin = 1e-3;
};

/// L(p,q) = p*l1(q) + (1-p)*l0(q) with the 0*infinite-loss convention applied
/// when a probability factor is exactly zero.
double expected_loss(const ProperLoss& loss, double p, double q);

/// Savage form G(q) + (p-q)G'(q). Requires a smooth loss and finite entropy
/// derivatives at q; equals expected_loss for proper regular losses.
double savage_expected_loss(const ProperLoss& loss, double p, double q);

/// Builds the loss with l1(q) = int_q^1 (1-c) w(c) dc and
/// l0(q) = int_0^q c w(c) dc. Density parts are integrated by adaptive
/// Simpson after the substitution c = sin^2(theta), which removes the
/// endpoint singularities of weights as steep as (c(1-c))^(-3/2); atoms are
/// summed in closed form. The construction rejects weights whose tails are
/// not integrable.
ProperLoss loss_from_weight(const WeightSpec& spec);

/// Checks that w is nonnegative and that int_eps^{1-eps} w is finite for
/// eps in {1e-1, 1e-2, 1e-3}. Throws std::domain_error on failure.
void validate_weight_spec(const WeightSpec& spec);

struct PropernessReport {
    bool pass = false;
    double max_deviation = 0.0;
    double worst_p = 0.0;
    std::vector<std::pair<double, double>> deviations;  // (p, deviation)
};

/// Minimizes q -> expected_loss(loss, p, q) over [0,1] by golden section at
/// resolution 1e-6 for every p in the grid. The deviation at p is
/// |argmin - p|, except that p counts as a minimizer whenever
/// L(p,p) <= L(p, argmin) + 1e-9 (flat minimizer sets, e.g. the 0-1 loss).
/// Passes iff the max deviation is <= 1e-4.
PropernessReport check_properness(const ProperLoss& loss,
                                  const std::vector<double>& p_grid);

ProperLoss zero_one_loss();
ProperLoss quadratic_loss();
ProperLoss log_loss(double clamp = kDefaultClamp);
ProperLoss boosting_loss(double clamp = kDefaultClamp);

/// Smooth proper loss with weight w(p) = (p(1-p))^(-1/2); partial losses are
/// arcsine expressions. Used as the "custom" convex loss throughout the
/// verification suites.
ProperLoss arcsine_loss(double clamp = kDefaultClamp);

/// The four standard losses: 0-1, quadratic, log, boosting.
std::vector<ProperLoss> catalog(double clamp = kDefaultClamp);

/// Catalog plus the arcsine loss, addressable by name.
ProperLoss find_loss(std::string_view name, double clamp = kDefaultClamp);
std::vector<std::string> known_loss_names();

/// Weight specs matching the catalog losses (the 0-1 entry is a pure atom).
WeightSpec weight_spec_for(std::string_view loss_name, double clamp = kDefaultClamp);

}  // namespace bregman
