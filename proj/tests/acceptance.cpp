// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sowp/sowp.hpp"

using namespace sowp;

namespace {

const Pulse reference = Pulse::from_lab(1800.0, 8, 1.3e13);
const auto table = default_species();
const std::vector<std::string> names{"F", "Cl", "Br"};

int failures = 0;
auto started = std::chrono::steady_clock::now();

void report(int n, const std::string& title, bool pass, const std::string& detail) {
    const auto now = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(now - started).count();
    started = now;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << n << " [PRIMARY] " << title << ": " << detail << "  ("
              << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat << std::setprecision(6)
              << "\n"
              << std::flush;
}

double round_dp(double x, int dp) {
    const double s = std::pow(10.0, dp);
    return std::round(x * s) / s;
}

double round_sf(double x, int sf) {
    if (x == 0.0) return 0.0;
    return round_dp(x, sf - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
}

bool same(double a, double b) { return std::abs(a - b) < 1e-9; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double d = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) d = std::max(d, std::abs(a.element(i, j) - b.element(i, j)));
    return d;
}

double max_abs(const DensityMatrix& a) {
    double d = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) d = std::max(d, std::abs(a.element(i, j)));
    return d;
}

cplx contour_action(const Pulse& pulse, double energy, const Vec3& p, cplx t, int n = 200000) {
    const cplx h = t / static_cast<double>(n);
    cplx sum = saddle::action_derivative(pulse, energy, p, 0.0) + saddle::action_derivative(pulse, energy, p, t);
    for (int k = 1; k < n; ++k)
        sum += (k % 2 ? 4.0 : 2.0) * saddle::action_derivative(pulse, energy, p, h * static_cast<double>(k));
    return sum * h / 3.0;
}

// Largest step against the overall direction of a sequence.
double largest_reversal(const std::vector<double>& x) {
    const double dir = x.back() >= x.front() ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) worst = std::max(worst, -dir * (x[i] - x[i - 1]));
    return worst;
}

int sign_changes(const std::vector<double>& x, double floor) {
    int changes = 0, last = 0;
    for (double v : x) {
        if (std::abs(v) <= floor) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int main() {
    std::cout << std::setprecision(6);
    const auto grid = MomentumGrid::for_carrier(reference.omega());
    std::map<std::string, DensityMatrix> full;

    {
        const std::map<std::string, std::pair<double, double>> target{
            {"F", {0.84, 0.05}}, {"Cl", {0.70, 0.05}}, {"Br", {0.02, 0.03}}};
        bool pass = true;
        std::ostringstream d;
        for (const auto& n : names) {
            full[n] = build_density_matrix(reference, find_species(table, n), grid).rho;
            const double g = coherence_degree(full[n]);
            const auto [want, tol] = target.at(n);
            pass = pass && std::abs(g - want) <= tol;
            d << n << " g = " << g << " (" << want << " +- " << tol << ")  ";
        }
        report(1, "reference coherence", pass, d.str());
    }

    SweepResult sweep;
    {
        sweep = coherence_sweep({{find_species(table, "F"), 2, 18},
                                 {find_species(table, "Cl"), 2, 18},
                                 {find_species(table, "Br"), 2, 8}},
                                SweepSettings{});
        std::ostringstream d;
        bool pass = sweep.failures.empty() && sweep.points.size() == 41;
        try {
            const auto fit = gaussian_fit(fit_points(sweep.points));
            pass = pass && std::abs(fit.g0 - 0.89) <= 0.05 && std::abs(fit.zeta - 1.15) <= 0.15 && fit.rms < 0.06;
            d << sweep.points.size() << " points, g0 = " << fit.g0 << " (0.89 +- 0.05), zeta = " << fit.zeta
              << " (1.15 +- 0.15), rms = " << fit.rms << " (< 0.06)";
        } catch (const Error& e) {
            pass = false;
            d << "fit failed: " << e.what();
        }
        for (const auto& f : sweep.failures) d << "; " << f.species << " N = " << f.cycles << ": " << f.message;
        report(2, "universal curve and fit", pass, d.str());
    }

    {
        FitResult law;
        law.g0 = 0.89;
        law.zeta = 1.15;
        const double ratios[] = {0.25, 0.61, 1.23, 3.33};
        const double expected[] = {0.83, 0.58, 0.16, 0.00};
        bool pass = true;
        std::ostringstream d;
        for (int i = 0; i < 4; ++i) {
            const double g = predict_g(ratios[i], law);
            pass = pass && same(round_dp(g, 2), expected[i]);
            d << "g(" << ratios[i] << ") = " << g << "  ";
        }
        const double r = invert_g(0.21, law);
        pass = pass && same(round_sf(r, 3), 1.12);
        d << "ratio(g = 0.21) = " << r;
        report(3, "coherence law table", pass, d.str());
    }

    {
        bool pass = true;
        std::ostringstream d;
        for (const auto& n : names) {
            const auto& s = find_species(table, n);
            const double g32 = reference.keldysh_gamma(s.kappa(Level::j3_2));
            const double g12 = reference.keldysh_gamma(s.kappa(Level::j1_2));
            const double shown = round_dp(g32, 2);
            pass = pass && shown >= 0.66 - 1e-9 && shown <= 0.70 + 1e-9;
            d << n << " gamma = " << std::setprecision(4) << g32 << " (j = 1/2: " << g12 << ")  "
              << std::setprecision(6);
        }
        d << "range [0.66, 0.70] at 2 d.p.";
        report(4, "Keldysh parameter range", pass, d.str());
    }

    {
        const double cm1[] = {404.10, 882.35, 3685.24};
        const double fs[] = {82.5, 37.8, 9.05};
        bool pass = true;
        std::ostringstream d;
        for (int i = 0; i < 3; ++i) {
            const double t = units::splitting_to_beat_period(cm1[i]);
            pass = pass && same(round_sf(t, 3), fs[i]);
            d << cm1[i] << " cm-1 -> " << t << " fs  ";
        }
        report(5, "beat periods", pass, d.str());
    }

    {
        const auto rho = pure_state_limit();
        const double p33 = rho.population(Level::j3_2, 3);
        const double p31 = rho.population(Level::j3_2, 1);
        const double p11 = rho.population(Level::j1_2, 1);
        const double c = signal_parameters(rho.normalized()).contrast();
        const bool pass = std::abs(p33) <= 1e-12 && std::abs(p31 - 2.0 / 3.0) <= 1e-12 &&
                          std::abs(p11 - 1.0 / 3.0) <= 1e-12 && std::abs(c - 8.0 / 19.0) <= 1e-12;
        std::ostringstream d;
        d << std::setprecision(16) << "populations (" << p33 << ", " << p31 << ", " << p11 << "), contrast " << c
          << " vs 8/19 = " << 8.0 / 19.0;
        report(6, "pure-state limit", pass, d.str());
    }

    {
        double herm = 0.0, reflect = 0.0, off_analytic = 0.0, off_numeric = 0.0;
        bool g_ok = true;
        for (const auto& n : names) {
            const auto& s = find_species(table, n);
            const auto numeric_grid = MomentumGrid::for_carrier(reference.omega(), MomentumGrid::default_energy_nodes,
                                                                MomentumGrid::default_theta_nodes, PhiMode::numeric);
            const auto numeric = build_density_matrix(reference, s, numeric_grid).rho;
            for (const DensityMatrix* r : {static_cast<const DensityMatrix*>(&full[n]), &numeric}) {
                herm = std::max(herm, r->max_hermiticity_error());
                for (const Level l : {Level::j3_2, Level::j1_2})
                    for (int m = 1; m <= two_j(l); m += 2)
                        reflect = std::max(reflect, rel(r->population(l, -m), r->population(l, m)));
            }
            off_analytic = std::max(off_analytic, full[n].max_relative_m_offdiagonal());
            off_numeric = std::max(off_numeric, numeric.max_relative_m_offdiagonal());
        }
        for (const auto& p : sweep.points) g_ok = g_ok && p.g >= 0.0 && p.g <= 1.0;

        // Saddle search over every pulse of the sweep, both channels, a spread of grid momenta.
        std::size_t searches = 0;
        bool count_ok = true;
        double residual = 0.0;
        for (const auto& n : names) {
            const auto& s = find_species(table, n);
            for (int cycles = 2; cycles <= (n == "Br" ? 8 : 18); ++cycles) {
                const Pulse pulse = Pulse::from_lab(1800.0, cycles, 1.3e13);
                for (const Level l : {Level::j3_2, Level::j1_2}) {
                    for (std::size_t i = 0; i < grid.p.size(); i += 19) {
                        for (std::size_t k = 0; k < grid.cos_theta.size(); k += 7) {
                            const double c = grid.cos_theta[k];
                            const Vec3 p{grid.p[i] * std::sqrt(1.0 - c * c), 0.0, grid.p[i] * c};
                            const auto sp = saddle::find_saddles(pulse, s.energy(l), p);
                            ++searches;
                            count_ok = count_ok && sp.size() == static_cast<std::size_t>(2 * cycles + 2);
                            for (const auto& x : sp)
                                residual = std::max(residual, std::abs(saddle::action_derivative(pulse, s.energy(l), p, x.t)));
                        }
                    }
                }
            }
        }

        double fd = 0.0;
        const double h = 1e-3;
        for (const auto& n : names) {
            const double e = find_species(table, n).energy(Level::j3_2);
            for (const Vec3& p : {Vec3{0.1, 0.0, 0.2}, Vec3{0.0, 0.3, -0.5}}) {
                for (const auto& x : saddle::find_saddles(reference, e, p)) {
                    const cplx t = x.t + cplx{3.0, 1.0};
                    const cplx d1 = (saddle::action(reference, e, p, t + h) - saddle::action(reference, e, p, t - h)) / (2.0 * h);
                    const cplx d2 = (saddle::action_derivative(reference, e, p, t + h) -
                                     saddle::action_derivative(reference, e, p, t - h)) / (2.0 * h);
                    const cplx a1 = saddle::action_derivative(reference, e, p, t);
                    const cplx a2 = saddle::action_second_derivative(reference, p, t);
                    fd = std::max({fd, std::abs(d1 - a1) / std::abs(a1), std::abs(d2 - a2) / std::abs(a2)});
                }
            }
        }

        double cg = 0.0;
        for (int tj1 : {1, 2, 3, 4})
            for (int tj2 : {1, 2, 3})
                for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
                    for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2)
                        for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
                            double s = 0.0;
                            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                                const int tm2 = tM - tm1;
                                if (std::abs(tm2) > tj2) continue;
                                s += angular::clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) *
                                     angular::clebsch_gordan(tj1, tm1, tj2, tm2, tJp, tM);
                            }
                            cg = std::max(cg, std::abs(s - (tJ == tJp ? 1.0 : 0.0)));
                        }

        const bool pass = herm <= 1e-12 && g_ok && reflect <= 1e-6 && off_analytic == 0.0 && off_numeric < 1e-2 &&
                          count_ok && residual < 1e-10 && fd < 1e-6 && cg <= 1e-12;
        std::ostringstream d;
        d << std::setprecision(3) << "hermiticity " << herm << ", g in [0,1] " << (g_ok ? "yes" : "no")
          << ", m reflection " << reflect << ", m' != m analytic " << off_analytic << " numeric " << off_numeric
          << ", saddles " << searches << " searches with 2N+2 " << (count_ok ? "yes" : "no") << " residual "
          << residual << ", action fd " << fd << ", CG " << cg;
        report(7, "invariants", pass, d.str());
    }

    std::map<std::string, BuildupTrace> traces;
    {
        double action = 0.0;
        for (const auto& n : names) {
            const double e = find_species(table, n).energy(Level::j3_2);
            for (const Vec3& p : {Vec3{0.0, 0.0, 0.1}, Vec3{0.2, 0.0, -0.4}}) {
                const auto sp = saddle::find_saddles(reference, e, p);
                for (std::size_t i = 0; i < sp.size(); i += 3) {
                    const cplx exact = saddle::action(reference, e, p, sp[i].t);
                    action = std::max(action, std::abs(exact - contour_action(reference, e, p, sp[i].t)) / std::abs(exact));
                }
            }
        }

        std::vector<FitPoint> synthetic;
        for (int i = 0; i < 12; ++i) {
            const double r = 0.05 + 0.17 * i;
            synthetic.push_back({r, gaussian_law(r, 0.89, 1.15)});
        }
        const auto fit = gaussian_fit(synthetic);
        const double fit_err = std::max(rel(fit.g0, 0.89), rel(fit.zeta, 1.15));

        double doubling = 0.0, final_step = 0.0;
        for (const auto& n : names) {
            const auto& s = find_species(table, n);
            const auto fine = build_density_matrix(reference, s, grid.doubled()).rho;
            doubling = std::max({doubling, rel(coherence_degree(fine), coherence_degree(full[n])),
                                 rel(fine.total_probability(), full[n].total_probability())});
            traces[n] = buildup(reference, s, grid);
            final_step = std::max(final_step, max_abs_diff(traces[n].steps.back().rho, full[n]) / max_abs(full[n]));
        }

        const bool pass = action < 1e-8 && fit_err < 1e-8 && doubling < 1e-3 && final_step <= 1e-12;
        std::ostringstream d;
        d << std::setprecision(3) << "action quadrature " << action << ", synthetic fit " << fit_err
          << ", grid doubling " << doubling << ", build-up final vs full " << final_step;
        report(8, "oracles", pass, d.str());
    }

    {
        auto parts = [&](const std::string& n) {
            std::vector<double> re, im;
            double peak = 0.0;
            for (const auto& st : traces[n].steps) {
                const cplx c = st.rho.coherence_element();
                re.push_back(c.real());
                im.push_back(c.imag());
                peak = std::max(peak, std::abs(c));
            }
            return std::tuple{re, im, peak};
        };
        // Reversals and sign changes are measured against 1e-3 of the peak |rho_off|.
        const auto [f_re, f_im, f_peak] = parts("F");
        const double rev_re = largest_reversal(f_re) / f_peak;
        const double rev_im = largest_reversal(f_im) / f_peak;
        const auto [b_re, b_im, b_peak] = parts("Br");
        const int changes = sign_changes(b_re, 1e-3 * b_peak);
        const bool pass = rev_re <= 1e-3 && rev_im <= 1e-3 && changes >= 1;
        std::ostringstream d;
        d << std::setprecision(3) << "F largest reversal / peak: Re " << rev_re << ", Im " << rev_im
          << " (<= 1e-3); Br sign changes of Re rho_off " << changes << " (>= 1)";
        report(9, "build-up structure", pass, d.str());
    }

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
    return failures == 0 ? 0 : 1;
}
