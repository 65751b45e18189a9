#include "oracle.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "single_photon.hpp"
#include "table.hpp"
#include "two_photon.hpp"

namespace wqed {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPopTol = 1e-8;

double coupling_v(double tau) { return std::sqrt(1.0 / (pi * tau)); }

}  // namespace

DiscreteModel build_discrete_model(const TwoAtomSystem& sys, int n_modes,
                                   std::pair<double, double> k_window,
                                   double coupling_scale) {
    validate(sys);
    if (n_modes < 256)
        throw std::invalid_argument("n_modes must be at least 256");
    const auto [lo, hi] = k_window;
    if (!(hi > lo))
        throw std::invalid_argument("empty k window");
    const double gb = sys.gamma_bar();
    const double margin = 10.0 * gb;
    for (double omega : {sys.atom1.omega, sys.atom2.omega})
        if (omega - lo < margin || hi - omega < margin)
            throw std::invalid_argument(
                "window too narrow: need >= 10 gammabar around both transition frequencies");

    DiscreteModel m;
    m.sys = sys;
    m.dk = (hi - lo) / n_modes;
    m.k.resize(n_modes);
    for (int j = 0; j < n_modes; ++j) m.k(j) = lo + (j + 0.5) * m.dk;
    m.coupling_scale = coupling_scale;
    m.c1 = coupling_v(sys.atom1.tau) * std::sqrt(m.dk) * coupling_scale;
    m.c2 = coupling_v(sys.atom2.tau) * std::sqrt(m.dk) * coupling_scale;
    return m;
}

void DiscreteModel::apply_one(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const int n = n_modes();
    y.resize(n + 2);
    y.head(n) = x.head(n).cwiseProduct(k.cast<cplx>());
    y.head(n).array() += c1 * x(n) + c2 * x(n + 1);
    const cplx ph_sum = x.head(n).sum();
    y(n) = sys.atom1.omega * x(n) + sys.g * x(n + 1) + c1 * ph_sum;
    y(n + 1) = sys.atom2.omega * x(n + 1) + sys.g * x(n) + c2 * ph_sum;
}

void DiscreteModel::apply_two(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const int n = n_modes();
    y.resize(two_exc_storage_dim());

    Eigen::Map<const Eigen::MatrixXcd> p(x.data(), n, n);
    const auto chi1 = x.segment(n * n, n);
    const auto chi2 = x.segment(n * n + n, n);
    const cplx d = x(n * n + 2 * n);

    Eigen::Map<Eigen::MatrixXcd> yp(y.data(), n, n);
    auto ychi1 = y.segment(n * n, n);
    auto ychi2 = y.segment(n * n + n, n);

    const Eigen::VectorXcd kc = k.cast<cplx>();
    yp.noalias() = kc.asDiagonal() * p;
    yp.noalias() += p * kc.asDiagonal();

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Eigen::VectorXcd v = inv_sqrt2 * (c1 * chi1 + c2 * chi2);
    // add v_j + v_l as one rounded sum so the update is symmetric bit for bit
    for (int l = 0; l < n; ++l) yp.col(l) += (v.array() + v(l)).matrix();

    const Eigen::VectorXcd row_sum = p.rowwise().sum();
    const double sqrt2 = std::sqrt(2.0);
    ychi1 = (k.array() + sys.atom1.omega).matrix().cast<cplx>().cwiseProduct(chi1);
    ychi1 += sys.g * chi2 + sqrt2 * c1 * row_sum;
    ychi1.array() += c2 * d;
    ychi2 = (k.array() + sys.atom2.omega).matrix().cast<cplx>().cwiseProduct(chi2);
    ychi2 += sys.g * chi1 + sqrt2 * c2 * row_sum;
    ychi2.array() += c1 * d;

    y(n * n + 2 * n) = (sys.atom1.omega + sys.atom2.omega) * d + c2 * chi1.sum() + c1 * chi2.sum();
}

SpectralBounds DiscreteModel::bounds_one() const {
    const int n = n_modes();
    const double diag_lo = std::min({k(0), sys.atom1.omega, sys.atom2.omega});
    const double diag_hi = std::max({k(n - 1), sys.atom1.omega, sys.atom2.omega});
    const double pad =
        1.05 * (std::sqrt(n * (c1 * c1 + c2 * c2)) + std::abs(sys.g)) + 1e-6 * (diag_hi - diag_lo) + 1e-9;
    return {diag_lo - pad, diag_hi + pad};
}

SpectralBounds DiscreteModel::bounds_two() const {
    const int n = n_modes();
    const double o1 = sys.atom1.omega, o2 = sys.atom2.omega;
    const double diag_lo = std::min({2.0 * k(0), k(0) + std::min(o1, o2), o1 + o2});
    const double diag_hi = std::max({2.0 * k(n - 1), k(n - 1) + std::max(o1, o2), o1 + o2});
    const double coupling = std::sqrt(2.0 * n * (c1 * c1 + c2 * c2)) +
                            std::sqrt(n * (c1 * c1 + c2 * c2)) + std::abs(sys.g);
    const double pad = 1.05 * coupling + 1e-6 * (diag_hi - diag_lo) + 1e-9;
    return {diag_lo - pad, diag_hi + pad};
}

Eigen::VectorXd DiscreteModel::loss_one() const {
    if (sys.atom1.gamma_ng == 0.0 && sys.atom2.gamma_ng == 0.0) return {};
    const int n = n_modes();
    Eigen::VectorXd loss = Eigen::VectorXd::Zero(n + 2);
    loss(n) = sys.atom1.gamma_ng;
    loss(n + 1) = sys.atom2.gamma_ng;
    return loss;
}

Eigen::VectorXd DiscreteModel::loss_two() const {
    if (sys.atom1.gamma_ng == 0.0 && sys.atom2.gamma_ng == 0.0) return {};
    const int n = n_modes();
    Eigen::VectorXd loss = Eigen::VectorXd::Zero(two_exc_storage_dim());
    loss.segment(n * n, n).array() = sys.atom1.gamma_ng;
    loss.segment(n * n + n, n).array() = sys.atom2.gamma_ng;
    loss(n * n + 2 * n) = sys.atom1.gamma_ng + sys.atom2.gamma_ng;
    return loss;
}

namespace {

std::pair<double, double> clamp_center(const TwoAtomSystem& sys, double center, double width) {
    const double gb = sys.gamma_bar();
    const double margin = 10.0 * gb;
    const double olo = std::min(sys.atom1.omega, sys.atom2.omega);
    const double ohi = std::max(sys.atom1.omega, sys.atom2.omega);
    const double c_min = ohi + margin - 0.5 * width;
    const double c_max = olo - margin + 0.5 * width;
    if (c_min > c_max)
        throw std::invalid_argument("window too narrow: widen the window or reduce margins");
    const double c = std::clamp(center, c_min, c_max);
    return {c - 0.5 * width, c + 0.5 * width};
}

}  // namespace

std::pair<double, double> window_for_probe(const TwoAtomSystem& sys, double k0, double width,
                                           int n_modes) {
    auto [lo, hi] = clamp_center(sys, k0, width);
    // shift so k0 lands on a cell boundary (no mode resonant with the carrier)
    const double dk = width / n_modes;
    const double shift = k0 - (lo + std::round((k0 - lo) / dk) * dk);
    return {lo + shift, hi + shift};
}

std::pair<double, double> window_for_pair(const TwoAtomSystem& sys, double k1, double k2,
                                          double width, int n_modes) {
    double dk = width / n_modes;
    const double sep = std::abs(k1 - k2);
    if (sep > 0.75 * dk) {
        // make dk divide the separation, rounding so the window never shrinks
        const int m = std::max(1, static_cast<int>(std::floor(sep / dk)));
        dk = sep / m;
    }
    const double w = dk * n_modes;
    auto [lo, hi] = clamp_center(sys, 0.5 * (k1 + k2), w);
    const double shift = k1 - (lo + std::round((k1 - lo) / dk) * dk);
    return {lo + shift, hi + shift};
}

namespace {

struct RunGeometry {
    double x0 = 0.0;
    double t_end = 0.0;
    double chunk = 1.0;
};

// Slowest relevant decay rate: smallest |Im| of the scattering poles with the
// couplings rescaled like the discrete model's.
double slowest_decay(const DiscreteModel& m) {
    if (m.coupling_scale == 0.0) return std::numeric_limits<double>::infinity();
    TwoAtomSystem scaled = m.sys;
    const double s2 = m.coupling_scale * m.coupling_scale;
    scaled.atom1.tau /= s2;
    scaled.atom2.tau /= s2;
    scaled.atom1.gamma_ng = scaled.atom2.gamma_ng = 0.0;  // loss only speeds decay
    const PoleSet p = poles(scaled);
    return std::min(std::abs(p.subradiant.imag()), std::abs(p.superradiant.imag()));
}

RunGeometry plan_geometry(const DiscreteModel& m, double sigma) {
    const double gb = m.sys.gamma_bar();
    if (!(sigma > 0.0) || sigma > gb / 10.0 * (1.0 + 1e-12))
        throw std::invalid_argument("wavepacket width must satisfy 0 < sigma <= gammabar/10");

    const double ring = m.ring_length();
    const double slow = slowest_decay(m);
    const double t_decay = std::isinf(slow) ? 0.0 : std::log(1e8) / (2.0 * slow);
    const double settle = t_decay + 4.0 / gb;

    // At t_end the packet center sits X past the atom and ring - X short of
    // wrapping back onto it.  Both gaps carry a Gaussian tail e^(-(sigma*gap)^2)
    // that keeps re-driving the atom, so both need sigma*gap = beta ~ 3.
    double beta = std::min(3.3, 0.5 * sigma * (ring - 1.0 / gb));
    if (beta / sigma < settle) beta = std::min(3.3, sigma * (ring - settle - 1.0 / gb));
    if (beta < 2.35)
        throw std::invalid_argument(
            "window too narrow for this wavepacket: ring length cannot hold the run");
    const double x_past = std::max(beta / sigma, settle);
    const double alpha = std::min(2.6, sigma * ring - beta - 0.5);

    RunGeometry g;
    g.x0 = -alpha / sigma;
    g.t_end = alpha / sigma + x_past;
    g.chunk = 8.0 / gb;
    return g;
}

Eigen::VectorXcd gaussian_packet(const Eigen::VectorXd& k, double k0, double sigma, double x0) {
    Eigen::VectorXcd a(k.size());
    for (Eigen::Index j = 0; j < k.size(); ++j) {
        const double arg = (k(j) - k0) / (2.0 * sigma);
        a(j) = std::exp(-arg * arg) * std::exp(cplx(0.0, -k(j) * x0));
    }
    return a;
}

double atom_population_one(const Eigen::VectorXcd& psi, int n) {
    return std::norm(psi(n)) + std::norm(psi(n + 1));
}

double atom_population_two(const Eigen::VectorXcd& psi, int n) {
    return psi.segment(n * n, 2 * n).squaredNorm() + std::norm(psi(n * n + 2 * n));
}

double energy_of(const ApplyFn& apply, const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd h(psi.size());
    apply(psi, h);
    return psi.dot(h).real();  // Eigen dot conjugates the left argument
}

}  // namespace

SingleRunResult single_excitation_scatter(const DiscreteModel& model, double k0, double sigma) {
    const int n = model.n_modes();
    const double gb = model.sys.gamma_bar();
    if (k0 - model.window_lo() < 10.0 * sigma + gb || model.window_hi() - k0 < 10.0 * sigma + gb)
        throw std::invalid_argument("probe energy too close to the window edge");
    const RunGeometry geo = plan_geometry(model, sigma);

    SingleRunResult r;
    r.t_end = geo.t_end;
    r.x0 = geo.x0;
    r.phi_in = gaussian_packet(model.k, k0, sigma, geo.x0);
    const double a_norm = r.phi_in.norm();

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n + 2);
    psi.head(n) = r.phi_in / a_norm;

    ApplyFn apply = [&model](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        model.apply_one(x, y);
    };
    Propagator prop{apply, model.bounds_one(), model.loss_one()};
    const bool lossy = prop.loss.size() > 0;
    const double e0 = lossy ? 0.0 : energy_of(apply, psi);

    prop.evolve(psi, geo.t_end, geo.chunk);

    r.final_atom_pop = atom_population_one(psi, n);
    if (r.final_atom_pop > kPopTol) {
        std::ostringstream os;
        os << "insufficient evolution time: atomic population " << r.final_atom_pop << " > "
           << kPopTol << " at t = " << geo.t_end;
        throw std::runtime_error(os.str());
    }
    if (!lossy) {
        r.norm_drift = std::abs(psi.norm() - 1.0);
        const double e1 = energy_of(apply, psi);
        r.energy_drift = std::abs(e1 - e0) / std::max(1.0, std::abs(e0));
    }

    r.phi_out = psi.head(n) * a_norm;

    // transmission at k0: per-mode ratio, linearly interpolated between the
    // two modes bracketing the carrier
    const int j0 = std::clamp(static_cast<int>((k0 - model.k(0)) / model.dk), 0, n - 2);
    auto t_at = [&](int j) {
        return r.phi_out(j) * std::exp(cplx(0.0, model.k(j) * geo.t_end)) / r.phi_in(j);
    };
    const cplx ta = t_at(j0), tb = t_at(j0 + 1);
    const double w = (k0 - model.k(j0)) / model.dk;
    r.t_hat = ta + (tb - ta) * w;
    return r;
}

Eigen::MatrixXcd TwoRunResult::bound_part() const {
    Eigen::MatrixXcd elastic = phi1_out * phi2_out.transpose();
    elastic += phi2_out * phi1_out.transpose();
    return psi_out - elastic / sym_norm;
}

std::vector<double> TwoRunResult::p2_total_relative(const std::vector<double>& x) const {
    return antidiagonal_density(psi_out, x);
}

std::vector<double> TwoRunResult::p2_bound_relative(const std::vector<double>& x) const {
    return antidiagonal_density(bound_part(), x);
}

std::vector<double> TwoRunResult::antidiagonal_density(const Eigen::MatrixXcd& amp,
                                                       const std::vector<double>& x) const {
    const Eigen::Index n = k.size();
    std::vector<double> out(x.size());
    Eigen::VectorXcd u(n), v(n), w(n);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double x1 = x_com + 0.5 * x[i];
        const double x2 = x_com - 0.5 * x[i];
        for (Eigen::Index j = 0; j < n; ++j) {
            u(j) = std::exp(cplx(0.0, k(j) * x1));
            v(j) = std::exp(cplx(0.0, k(j) * x2));
        }
        w.noalias() = amp * v;
        out[i] = std::norm(cplx(u.transpose() * w));
    }
    return out;
}

double TwoRunResult::off_support_weight(double m_sigmas) const {
    const Eigen::Index n = k.size();
    std::vector<bool> in_support(n);
    for (Eigen::Index j = 0; j < n; ++j)
        in_support[j] = std::abs(k(j) - k1) <= m_sigmas * sigma ||
                        std::abs(k(j) - k2) <= m_sigmas * sigma;
    double weight = 0.0;
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            if (!in_support[a] || !in_support[b]) weight += std::norm(psi_out(a, b));
    return weight;
}

cplx TwoRunResult::extract_b(int j, int l) const {
    const Eigen::MatrixXcd bound = bound_part();
    const Eigen::Index n = k.size();
    cplx shell_in = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
        const Eigen::Index o = j + l - m;
        if (o >= 0 && o < n) shell_in += psi_in(m, o);
    }
    const double e_shell = k(j) + k(l);
    return 2.0 * bound(j, l) * std::exp(cplx(0.0, e_shell * t_end)) / (dk * shell_in);
}

TwoRunResult two_excitation_scatter(const DiscreteModel& model, double k1, double k2,
                                    double sigma) {
    const int n = model.n_modes();
    const double gb = model.sys.gamma_bar();
    for (double kx : {k1, k2})
        if (kx - model.window_lo() < 10.0 * sigma + gb ||
            model.window_hi() - kx < 10.0 * sigma + gb)
            throw std::invalid_argument("probe energy too close to the window edge");
    const RunGeometry geo = plan_geometry(model, sigma);

    TwoRunResult r;
    r.k = model.k;
    r.dk = model.dk;
    r.k1 = k1;
    r.k2 = k2;
    r.sigma = sigma;
    r.t_end = geo.t_end;
    r.x_com = geo.x0 + geo.t_end;

    const Eigen::VectorXcd a1 = gaussian_packet(model.k, k1, sigma, geo.x0);
    const Eigen::VectorXcd a2 = gaussian_packet(model.k, k2, sigma, geo.x0);
    Eigen::MatrixXcd sym = a1 * a2.transpose();
    sym += a2 * a1.transpose();
    r.sym_norm = sym.norm();  // Frobenius
    r.psi_in = sym / r.sym_norm;

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(model.two_exc_storage_dim());
    Eigen::Map<Eigen::MatrixXcd>(psi.data(), n, n) = r.psi_in;

    ApplyFn apply = [&model](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        model.apply_two(x, y);
    };
    Propagator prop{apply, model.bounds_two(), model.loss_two()};
    const bool lossy = prop.loss.size() > 0;
    const double e0 = lossy ? 0.0 : energy_of(apply, psi);

    prop.evolve(psi, geo.t_end, geo.chunk);

    r.final_atom_pop = atom_population_two(psi, n);
    if (r.final_atom_pop > kPopTol) {
        std::ostringstream os;
        os << "insufficient evolution time: atomic population " << r.final_atom_pop << " > "
           << kPopTol << " at t = " << geo.t_end;
        throw std::runtime_error(os.str());
    }
    if (!lossy) {
        r.norm_drift = std::abs(psi.norm() - 1.0);
        const double e1 = energy_of(apply, psi);
        r.energy_drift = std::abs(e1 - e0) / std::max(1.0, std::abs(e0));
    }
    r.psi_out = Eigen::Map<Eigen::MatrixXcd>(psi.data(), n, n);

    // singly-scattered packets on the same grid and clock
    const SingleRunResult s1 = single_excitation_scatter(model, k1, sigma);
    const SingleRunResult s2 = single_excitation_scatter(model, k2, sigma);
    r.phi1_out = s1.phi_out;
    r.phi2_out = s2.phi_out;
    return r;
}

double hermiticity_defect(const DiscreteModel& model, int sector, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const long dim = sector == 1 ? model.one_exc_dim() : model.two_exc_storage_dim();
    Eigen::VectorXcd u(dim), v(dim), hu(dim), hv(dim);
    for (long i = 0; i < dim; ++i) {
        u(i) = cplx(nd(rng), nd(rng));
        v(i) = cplx(nd(rng), nd(rng));
    }
    if (sector == 2) {
        // physical states have a bosonic (symmetric) photon-photon block
        const int n = model.n_modes();
        for (Eigen::VectorXcd* w : {&u, &v}) {
            Eigen::Map<Eigen::MatrixXcd> p(w->data(), n, n);
            p = ((p + p.transpose()) / 2.0).eval();
        }
    }
    if (sector == 1) {
        model.apply_one(v, hv);
        model.apply_one(u, hu);
    } else {
        model.apply_two(v, hv);
        model.apply_two(u, hu);
    }
    const cplx a = u.dot(hv);
    const cplx b = v.dot(hu);
    return std::abs(a - std::conj(b)) / (u.norm() * hv.norm() + 1e-300);
}

// ---------------- scenario harness ----------------

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

ReportRow make_row(const std::string& id, const std::string& quantity, double closed,
                   double oracle, double tol) {
    ReportRow row;
    row.scenario_id = id;
    row.quantity = quantity;
    row.closed_form = closed;
    row.oracle = oracle;
    row.rel_err = std::abs(oracle - closed) / std::max(1e-300, std::abs(closed));
    row.tol = tol;
    row.pass = row.rel_err <= tol;
    return row;
}

void run_single_t(const OracleScenario& sc, std::vector<ReportRow>& rows) {
    const auto window = window_for_probe(sc.sys, sc.k0, sc.window, sc.n_modes);
    const DiscreteModel model = build_discrete_model(sc.sys, sc.n_modes, window);
    const SingleRunResult run = single_excitation_scatter(model, sc.k0, sc.sigma);
    const cplx t_closed = transmission_chiral(sc.k0, sc.closed_sys);
    ReportRow row = make_row(sc.id, "t_k", std::abs(t_closed), std::abs(run.t_hat), sc.tol);
    row.rel_err = std::abs(run.t_hat - t_closed) / std::abs(t_closed);
    row.pass = row.rel_err <= sc.tol;
    rows.push_back(row);
}

void run_p2_shape(const OracleScenario& sc, std::vector<ReportRow>& rows) {
    const auto window = window_for_pair(sc.sys, sc.k1, sc.k2, sc.window, sc.n_modes);
    const DiscreteModel model = build_discrete_model(sc.sys, sc.n_modes, window);
    const TwoRunResult run = two_excitation_scatter(model, sc.k1, sc.k2, sc.sigma);

    const auto xs = linspace(-8.0, 8.0, 321);
    const auto oracle_p2 = run.p2_bound_relative(xs);
    const auto closed = p2_profile(sc.k1, sc.k2, xs, sc.closed_sys);

    // both shapes normalized to unit L2 on the common grid
    double no = 0.0, nc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        no += oracle_p2[i] * oracle_p2[i];
        nc += closed.p2[i] * closed.p2[i];
    }
    no = std::sqrt(no);
    nc = std::sqrt(nc);
    double err2 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = oracle_p2[i] / no - closed.p2[i] / nc;
        err2 += d * d;
    }
    ReportRow row = make_row(sc.id, "p2_l2_rel_err", 0.0, std::sqrt(err2), sc.tol);
    row.rel_err = std::sqrt(err2);
    row.pass = row.rel_err <= sc.tol;
    rows.push_back(row);
}

void run_quench_monotone(const OracleScenario& sc, std::vector<ReportRow>& rows) {
    std::vector<double> weights;
    for (int halving = 0; halving < 3; ++halving) {
        const double sigma = sc.sigma / (1 << halving);
        const auto window = window_for_pair(sc.sys, sc.k1, sc.k2, sc.window, sc.n_modes);
        const DiscreteModel model = build_discrete_model(sc.sys, sc.n_modes, window);
        const TwoRunResult run = two_excitation_scatter(model, sc.k1, sc.k2, sigma);
        weights.push_back(run.off_support_weight());
        ReportRow row;
        row.scenario_id = sc.id;
        row.quantity = "off_support_weight(sigma=" + format_double(sigma) + ")";
        row.closed_form = 0.0;
        row.oracle = weights.back();
        row.rel_err = 0.0;
        row.tol = 1.0;
        row.pass = true;
        rows.push_back(row);
    }
    ReportRow mono;
    mono.scenario_id = sc.id;
    mono.quantity = "off_support_weight_strictly_decreasing";
    mono.closed_form = 1.0;
    mono.oracle = (weights[0] > weights[1] && weights[1] > weights[2]) ? 1.0 : 0.0;
    mono.rel_err = std::abs(mono.oracle - 1.0);
    mono.tol = 0.0;
    mono.pass = mono.oracle == 1.0;
    rows.push_back(mono);
}

void run_b_point(const OracleScenario& sc, std::vector<ReportRow>& rows) {
    const auto window = window_for_probe(sc.sys, sc.k1, sc.window, sc.n_modes);
    const DiscreteModel model = build_discrete_model(sc.sys, sc.n_modes, window);
    const TwoRunResult run = two_excitation_scatter(model, sc.k1, sc.k2, sc.sigma);

    // central output pair (j0, j0): Delta_o = 0 on the shell through 2*k(j0)
    const int j0 = std::clamp(static_cast<int>((0.5 * (sc.k1 + sc.k2) - model.k(0)) / model.dk),
                              0, model.n_modes() - 1);
    const cplx b_oracle = run.extract_b(j0, j0);
    const double kj = model.k(j0);
    const cplx b_closed = fluorescence_B(kj, kj, kj, kj, sc.closed_sys);
    ReportRow row = make_row(sc.id, "abs_B_at_point", std::abs(b_closed), std::abs(b_oracle),
                             sc.tol);
    rows.push_back(row);
}

}  // namespace

std::vector<ReportRow> comparison_report(const std::vector<OracleScenario>& scenarios) {
    std::vector<ReportRow> rows;
    for (const auto& sc : scenarios) {
        if (sc.kind == "single_t")
            run_single_t(sc, rows);
        else if (sc.kind == "p2_shape")
            run_p2_shape(sc, rows);
        else if (sc.kind == "quench_monotone")
            run_quench_monotone(sc, rows);
        else if (sc.kind == "b_point")
            run_b_point(sc, rows);
        else
            throw std::invalid_argument("unknown scenario kind: " + sc.kind);
    }
    return rows;
}

std::vector<OracleScenario> parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path);

    std::vector<OracleScenario> out;
    OracleScenario cur;
    bool open = false;
    bool closed_touched = false;

    auto flush = [&] {
        if (!open) return;
        if (!closed_touched) cur.closed_sys = cur.sys;
        out.push_back(cur);
        open = false;
        closed_touched = false;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario file line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto num = [&]() {
            char* end = nullptr;
            const double v = std::strtod(value.c_str(), &end);
            if (end == value.c_str() || *end != '\0')
                throw std::invalid_argument("bad number in scenario file line " +
                                            std::to_string(lineno));
            return v;
        };

        if (key == "scenario") {
            flush();
            cur = OracleScenario{};
            cur.id = value;
            open = true;
            continue;
        }
        if (!open)
            throw std::invalid_argument("scenario file must start with 'scenario = <id>'");
        if (key == "kind") cur.kind = value;
        else if (key == "omega_d") { cur.sys.atom1.omega = num(); cur.sys.atom2.omega = -cur.sys.atom1.omega; }
        else if (key == "omega1") cur.sys.atom1.omega = num();
        else if (key == "omega2") cur.sys.atom2.omega = num();
        else if (key == "tau1") cur.sys.atom1.tau = num();
        else if (key == "tau2") cur.sys.atom2.tau = num();
        else if (key == "gamma_ng1") cur.sys.atom1.gamma_ng = num();
        else if (key == "gamma_ng2") cur.sys.atom2.gamma_ng = num();
        else if (key == "g") cur.sys.g = num();
        else if (key == "closed_omega_d") { closed_touched = true; cur.closed_sys.atom1.omega = num(); cur.closed_sys.atom2.omega = -cur.closed_sys.atom1.omega; }
        else if (key == "closed_tau1") { closed_touched = true; cur.closed_sys.atom1.tau = num(); }
        else if (key == "closed_tau2") { closed_touched = true; cur.closed_sys.atom2.tau = num(); }
        else if (key == "k0") cur.k0 = num();
        else if (key == "k1") cur.k1 = num();
        else if (key == "k2") cur.k2 = num();
        else if (key == "sigma") cur.sigma = num();
        else if (key == "n_modes") cur.n_modes = static_cast<int>(num());
        else if (key == "window") cur.window = num();
        else if (key == "tol") cur.tol = num();
        else throw std::invalid_argument("unknown scenario key: " + key);

        if (!closed_touched &&
            (key == "omega_d" || key == "omega1" || key == "omega2" || key == "tau1" ||
             key == "tau2" || key == "gamma_ng1" || key == "gamma_ng2" || key == "g"))
            cur.closed_sys = cur.sys;
    }
    flush();
    return out;
}

void write_report(const std::vector<ReportRow>& rows, const std::string& path,
                  const std::string& format) {
    if (format == "csv") {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + path);
        out << "# title = verification report\n";
        out << "scenario_id,quantity,closed_form,oracle,rel_err,tol,pass\n";
        for (const auto& r : rows)
            out << r.scenario_id << "," << r.quantity << "," << format_double(r.closed_form)
                << "," << format_double(r.oracle) << "," << format_double(r.rel_err) << ","
                << format_double(r.tol) << "," << (r.pass ? 1 : 0) << "\n";
        if (!out) throw IoError("write failed: " + path);
        return;
    }
    if (format != "json") throw std::invalid_argument("unknown output format: " + format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "{\n  \"meta\": {\"title\": \"verification report\"},\n  \"data\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << "    {\"scenario_id\": \"" << r.scenario_id << "\", \"quantity\": \""
            << r.quantity << "\", \"closed_form\": " << format_double(r.closed_form)
            << ", \"oracle\": " << format_double(r.oracle)
            << ", \"rel_err\": " << format_double(r.rel_err)
            << ", \"tol\": " << format_double(r.tol) << ", \"pass\": " << (r.pass ? 1 : 0)
            << "}" << (i + 1 == rows.size() ? "" : ",") << "\n";
    }
    out << "  ]\n}\n";
    if (!out) throw IoError("write failed: " + path);
}

std::vector<ReportRow> read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<ReportRow> rows;
    std::string line;
    bool header_seen = false;
    const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    while (std::getline(in, line)) {
        if (json) {
            const auto id_pos = line.find("\"scenario_id\": \"");
            if (id_pos == std::string::npos) continue;
            ReportRow r;
            auto grab_str = [&line](const char* key) {
                const std::string tag = std::string("\"") + key + "\": \"";
                const auto a = line.find(tag) + tag.size();
                return line.substr(a, line.find('"', a) - a);
            };
            auto grab_num = [&line](const char* key) {
                const std::string tag = std::string("\"") + key + "\": ";
                const auto a = line.find(tag) + tag.size();
                return std::strtod(line.c_str() + a, nullptr);
            };
            r.scenario_id = grab_str("scenario_id");
            r.quantity = grab_str("quantity");
            r.closed_form = grab_num("closed_form");
            r.oracle = grab_num("oracle");
            r.rel_err = grab_num("rel_err");
            r.tol = grab_num("tol");
            r.pass = grab_num("pass") != 0.0;
            rows.push_back(std::move(r));
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ss, tok, ',')) toks.push_back(tok);
        if (toks.size() != 7) throw IoError("malformed report row in " + path);
        ReportRow r;
        r.scenario_id = toks[0];
        r.quantity = toks[1];
        r.closed_form = std::strtod(toks[2].c_str(), nullptr);
        r.oracle = std::strtod(toks[3].c_str(), nullptr);
        r.rel_err = std::strtod(toks[4].c_str(), nullptr);
        r.tol = std::strtod(toks[5].c_str(), nullptr);
        r.pass = toks[6] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<OracleScenario> default_scenarios() {
    std::vector<OracleScenario> out;
    // fast poles (both at -i gammabar) keep the ring geometry short; the
    // detuned probes get a wider window so they can sit at its exact center
    const TwoAtomSystem sys{{1.0, 1.0, 0.0}, {-1.0, 1.0, 0.0}, 0.0};

    const struct { const char* id; double k0; double window; } probes[] = {
        {"single_t_omega1", 1.0, 26.0},  {"single_t_omega2", -1.0, 26.0},
        {"single_t_omega_c", 0.0, 26.0}, {"single_t_plus5", 5.0, 32.0},
        {"single_t_minus5", -5.0, 32.0},
    };
    for (const auto& p : probes) {
        OracleScenario sc;
        sc.id = p.id;
        sc.kind = "single_t";
        sc.sys = sc.closed_sys = sys;
        sc.k0 = p.k0;
        sc.sigma = 0.05;
        sc.n_modes = 512;
        sc.window = p.window;
        sc.tol = 0.02;
        out.push_back(sc);
    }

    {
        OracleScenario sc;
        sc.id = "p2_fig2a_bunched";
        sc.kind = "p2_shape";
        sc.sys = sc.closed_sys = TwoAtomSystem{{2.0, 1.0, 0.0}, {-2.0, 1.0, 0.0}, 0.0};
        sc.k1 = 2.0;
        sc.k2 = 0.0;
        sc.sigma = 1.0 / 15.0;
        sc.n_modes = 384;
        sc.window = 27.0;
        sc.tol = 0.10;
        out.push_back(sc);
    }
    {
        OracleScenario sc;
        sc.id = "quench_sigma_scaling";
        sc.kind = "quench_monotone";
        sc.sys = sc.closed_sys = sys;
        sc.k1 = 1.0;
        sc.k2 = -1.0;
        sc.sigma = 0.1;
        sc.n_modes = 832;
        sc.window = 22.2;
        sc.tol = 0.0;
        out.push_back(sc);
    }
    {
        OracleScenario sc;
        sc.id = "b_point_ebar3";
        sc.kind = "b_point";
        sc.sys = sc.closed_sys = sys;
        sc.k1 = sc.k2 = 1.5;
        sc.sigma = 1.0 / 12.0;
        sc.n_modes = 384;
        sc.window = 30.0;
        sc.tol = 0.05;
        out.push_back(sc);
    }
    return out;
}

}  // namespace wqed
