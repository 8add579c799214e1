// Builds an SU(3) solution from explicit parameters, evaluates it, and runs
// a few of the checks the harness performs.

#include <iostream>
#include <map>

#include <toda/asymptotics.hpp>
#include <toda/mass.hpp>
#include <toda/residual.hpp>

int main() {
  using namespace toda;
  // P_1 = z + 0.2, P_2 = z^2 + 0.1i z - 0.3; lambdas are rescaled to the
  // product constraint.
  std::map<std::pair<int, int>, std::complex<double>> coeffs{
      {{1, 0}, {0.2, 0.0}}, {{2, 1}, {0.0, 0.1}}, {{2, 0}, {-0.3, 0.0}}};
  double scale = 0;
  const auto sp = SolutionParams::from_raw(2, {1.0, 2.0, 0.5}, coeffs, &scale);
  std::cout << "lambda scale " << scale << "\n";

  const auto e = eval_all(sp, std::complex<double>(0.3, -0.1));
  std::cout << "U_1, U_2 at 0.3-0.1i: " << e.u_lower[0] << ", " << e.u_lower[1] << "\n";

  const auto r = pde_residual(sp, GridSpec::with_spacing({0, 0}, 1.0, 0.02));
  std::cout << "PDE residual " << r.overall_max() << ", order " << r.order_estimate() << "\n";

  for (int m = 1; m <= 2; ++m) {
    const auto ff = first_frequency_check(sp, m);
    std::cout << "r * freq-1 of -U^" << m << ": " << ff.cos_part.extrapolated << " (predicted " << ff.cos_part.predicted
              << ")\n";
  }
  for (int i = 1; i <= 2; ++i)
    std::cout << "mass " << i << ": " << mass_flux(sp, i, 1e3) << " vs " << predicted_mass(2, i) << "\n";
}
