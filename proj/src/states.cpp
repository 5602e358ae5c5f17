#include "cvtele/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "cvtele/teleport.hpp"

namespace cvtele {

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
    throw Error("states-parse", "grammar",
                "cannot parse state spec '" + std::string(text) + "': " + why);
}

double parse_double(std::string_view text, std::string_view token) {
    std::string_view body = token;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);  // from_chars rejects '+'
    double v = 0.0;
    const char* end = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(body.data(), end, v);
    if (ec != std::errc() || ptr != end || body.empty())
        parse_fail(text, "bad number '" + std::string(token) + "'");
    return v;
}

// <re> | <im>i | <re>(+|-)<im>i
cxd parse_complex(std::string_view text, std::string_view token) {
    if (token.empty()) parse_fail(text, "empty complex literal");
    if (token.back() == 'i') {
        std::string_view body = token.substr(0, token.size() - 1);
        // search for the sign separating the parts (skip a leading sign and
        // exponent signs)
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                const double re = parse_double(text, body.substr(0, i));
                std::string_view imtok = body.substr(i);
                const double im = imtok == "+" ? 1.0
                                : imtok == "-" ? -1.0
                                               : parse_double(text, imtok);
                return {re, im};
            }
        }
        const double im = body.empty() ? 1.0 : body == "-" ? -1.0 : parse_double(text, body);
        return {0.0, im};
    }
    return {parse_double(text, token), 0.0};
}

std::vector<std::pair<std::string, std::string>> parse_kv(std::string_view text,
                                                          std::string_view args) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    while (pos <= args.size()) {
        const std::size_t comma = std::min(args.find(',', pos), args.size());
        std::string_view item = args.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) parse_fail(text, "expected key=value pairs");
        out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        pos = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

StateSpec parse_state_spec(std::string_view text, int dim) {
    StateSpec spec;
    spec.dim = dim;
    spec.text = std::string(text);
    const std::size_t colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{}
                                                                  : text.substr(colon + 1);
    auto need_args = [&] {
        if (colon == std::string_view::npos || args.empty()) parse_fail(text, "missing arguments");
    };
    if (head == "vacuum") {
        spec.kind = StateSpec::Kind::vacuum;
    } else if (head == "two-mode-vacuum" || head == "two_mode_vacuum") {
        spec.kind = StateSpec::Kind::two_mode_vacuum;
    } else if (head == "coherent") {
        need_args();
        spec.kind = StateSpec::Kind::coherent;
        spec.alpha = parse_complex(text, args);
    } else if (head == "fock") {
        need_args();
        spec.kind = StateSpec::Kind::fock;
        const double n = parse_double(text, args);
        spec.n = static_cast<int>(n);
        if (spec.n < 0 || spec.n != n) parse_fail(text, "fock level must be a nonnegative integer");
    } else if (head == "thermal") {
        need_args();
        spec.kind = StateSpec::Kind::thermal;
        for (auto& [k, v] : parse_kv(text, args)) {
            if (k == "n" || k == "nbar")
                spec.nbar = parse_double(text, v);
            else
                parse_fail(text, "unknown key '" + k + "'");
        }
        if (spec.nbar < 0.0) parse_fail(text, "thermal occupancy must be >= 0");
    } else if (head == "cat") {
        need_args();
        spec.kind = StateSpec::Kind::cat;
        bool saw_alpha = false;
        for (auto& [k, v] : parse_kv(text, args)) {
            if (k == "alpha") {
                spec.alpha = parse_complex(text, v);
                saw_alpha = true;
            } else if (k == "parity") {
                if (v == "even")
                    spec.even = true;
                else if (v == "odd")
                    spec.even = false;
                else
                    parse_fail(text, "parity must be even or odd");
            } else {
                parse_fail(text, "unknown key '" + k + "'");
            }
        }
        if (!saw_alpha || std::abs(spec.alpha) < 1e-12)
            parse_fail(text, "cat state needs a nonzero alpha");
    } else if (head == "svs" || head == "psub-svs") {
        need_args();
        spec.kind = head == "svs" ? StateSpec::Kind::svs : StateSpec::Kind::psub_svs;
        for (auto& [k, v] : parse_kv(text, args)) {
            if (k == "r")
                spec.r = parse_double(text, v);
            else
                parse_fail(text, "unknown key '" + k + "'");
        }
        if (spec.r < 0.0 || !std::isfinite(spec.r)) parse_fail(text, "r must be finite and >= 0");
        if (spec.kind == StateSpec::Kind::psub_svs && spec.r <= 0.0)
            parse_fail(text, "photon subtraction needs r > 0");
    } else if (head == "bell") {
        need_args();
        spec.kind = StateSpec::Kind::fock_bell;
        for (auto& [k, v] : parse_kv(text, args)) {
            if (k.size() < 2 || k[0] != 'c') parse_fail(text, "bell keys look like c0, c1, ...");
            const double idx = parse_double(text, std::string_view(k).substr(1));
            const int i = static_cast<int>(idx);
            if (i < 0 || i != idx) parse_fail(text, "bell index must be a nonnegative integer");
            if (i >= static_cast<int>(spec.bell.size())) spec.bell.resize(i + 1, 0.0);
            spec.bell[i] = parse_double(text, v);
        }
        double norm = 0.0;
        for (double c : spec.bell) norm += c * c;
        if (norm <= 0.0) parse_fail(text, "bell coefficients are all zero");
    } else {
        parse_fail(text, "unknown state kind '" + std::string(head) + "'");
    }
    return spec;
}

namespace {

void population_guard(const StateHandle& h, const std::string& label) {
    if (h.population < 1.0 - 1e-6)
        throw Error("states-lib", "truncation-population",
                    "state '" + label + "' places too little population below the truncation",
                    h.population, 1e-6);
}

StateHandle build_cat(const StateSpec& spec) {
    const int dim = spec.dim;
    const double x2 = 2.0 * std::norm(spec.alpha);
    const double sign = spec.even ? 1.0 : -1.0;
    const double norm = std::sqrt(2.0 * (1.0 + sign * std::exp(-x2)));
    CVector amps(dim);
    cxd c = std::exp(-0.25 * x2);
    for (int k = 0; k < dim; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        amps(k) = c * (1.0 + sign * parity) / norm;
        c *= spec.alpha / std::sqrt(static_cast<double>(k + 1));
    }
    return StateHandle::from_pure(FockVector(1, dim, std::move(amps)), spec.text);
}

StateHandle build_psub_svs(const StateSpec& spec) {
    const int dim = spec.dim;
    const double t = std::tanh(spec.r);
    // || a1 a2 |SVS> ||^2 = sinh^2(r) cosh(2r)
    const double norm = std::sinh(spec.r) * std::sqrt(std::cosh(2.0 * spec.r));
    CVector amps = CVector::Zero(dim * dim);
    double c = t / (std::cosh(spec.r) * norm);
    for (int m = 0; m < dim; ++m) {
        amps(m * dim + m) = (m + 1) * c;
        c *= t;
    }
    return StateHandle::from_pure(FockVector(2, dim, std::move(amps)), spec.text);
}

StateHandle build_svs_like(const StateSpec& spec, double r) {
    const int dim = spec.dim;
    CVector amps = CVector::Zero(dim * dim);
    const double t = std::tanh(r);
    double c = 1.0 / std::cosh(r);
    for (int n = 0; n < dim; ++n) {
        amps(n * dim + n) = c;
        c *= t;
    }
    StateHandle h = StateHandle::from_pure(FockVector(2, dim, std::move(amps)), spec.text);
    h.gaussian = svs(r);
    return h;
}

}  // namespace

StateHandle build(const StateSpec& spec) {
    StateHandle h;
    switch (spec.kind) {
        case StateSpec::Kind::vacuum:
            h = StateHandle::from_gaussian(vacuum_gaussian(1), spec.dim, spec.text);
            break;
        case StateSpec::Kind::coherent:
            h = StateHandle::from_gaussian(coherent_gaussian(spec.alpha), spec.dim, spec.text);
            break;
        case StateSpec::Kind::thermal:
            h = StateHandle::from_gaussian(thermal_gaussian(spec.nbar), spec.dim, spec.text);
            break;
        case StateSpec::Kind::fock: {
            if (spec.n >= spec.dim)
                throw Error("states-lib", "truncation-population",
                            "fock level does not fit the truncation",
                            static_cast<double>(spec.n), spec.dim - 1);
            CVector amps = CVector::Zero(spec.dim);
            amps(spec.n) = 1.0;
            h = StateHandle::from_pure(FockVector(1, spec.dim, std::move(amps)), spec.text);
            break;
        }
        case StateSpec::Kind::cat:
            h = build_cat(spec);
            break;
        case StateSpec::Kind::svs:
            h = build_svs_like(spec, spec.r);
            break;
        case StateSpec::Kind::two_mode_vacuum:
            h = build_svs_like(spec, 0.0);
            break;
        case StateSpec::Kind::psub_svs:
            h = build_psub_svs(spec);
            break;
        case StateSpec::Kind::fock_bell: {
            if (static_cast<int>(spec.bell.size()) > spec.dim)
                throw Error("states-lib", "truncation-population",
                            "bell coefficient list does not fit the truncation",
                            static_cast<double>(spec.bell.size()), spec.dim);
            double norm = 0.0;
            for (double c : spec.bell) norm += c * c;
            norm = std::sqrt(norm);
            CVector amps = CVector::Zero(spec.dim * spec.dim);
            for (std::size_t i = 0; i < spec.bell.size(); ++i)
                amps(i * spec.dim + i) = spec.bell[i] / norm;
            h = StateHandle::from_pure(FockVector(2, spec.dim, std::move(amps)), spec.text);
            break;
        }
    }
    population_guard(h, spec.text);
    return h;
}

StateHandle build(std::string_view text, int dim) { return build(parse_state_spec(text, dim)); }

std::vector<std::string> input_catalog() {
    return {"vacuum", "coherent:0.3+0.2i", "fock:1", "thermal:n=1", "cat:alpha=1,parity=even"};
}

std::vector<std::string> resource_catalog() {
    return {"two-mode-vacuum", "svs:r=0.4", "psub-svs:r=0.4", "bell:c0=0.8,c1=0.6",
            "bell:c0=0.6,c1=0.6,c2=0.5,c3=0.2"};
}

std::vector<double> schmidt_probabilities(const StateHandle& state) {
    if (state.modes != 2)
        throw Error("states-lib", "schmidt", "schmidt decomposition expects a two-mode state");
    const int dim = state.dim;
    Matrix coeff(dim, dim);
    if (state.pure) {
        using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        coeff = Eigen::Map<const RowMat>(state.pure->amps().data(), dim, dim);
    } else {
        const FockDensityMatrix rho = state.fock_state();
        const double purity = rho.purity();
        if (purity < 1.0 - 1e-8)
            throw Error("states-lib", "purity", "state is not pure", purity, 1e-8);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
        const Eigen::Index top = rho.mat().rows() - 1;  // eigenvalues ascending
        using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const CVector v = es.eigenvectors().col(top);
        coeff = Eigen::Map<const RowMat>(v.data(), dim, dim);
    }
    Eigen::JacobiSVD<Matrix> svd(coeff);
    std::vector<double> probs(svd.singularValues().size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double s = svd.singularValues()(i);
        probs[i] = s * s;
    }
    std::sort(probs.begin(), probs.end(), std::greater<>());
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-8)
        throw Error("states-lib", "schmidt-norm", "Schmidt coefficients do not sum to 1",
                    std::abs(total - 1.0), 1e-8);
    return probs;
}

EntanglementRecord schmidt_entropy(const StateHandle& state) {
    const std::vector<double> probs = schmidt_probabilities(state);
    double entropy = 0.0;
    for (double p : probs)
        if (p > 0.0) entropy -= p * std::log2(p);
    entropy = std::max(entropy, 0.0);
    return {entropy, epr_uncertainty(state), state.label};
}

bool schmidt_geometric(const std::vector<double>& probs, double tol) {
    std::vector<double> sig;
    for (double p : probs)
        if (p > 1e-14) sig.push_back(p);
    if (sig.size() <= 1) return true;
    const double ratio = sig[1] / sig[0];
    for (std::size_t i = 1; i + 1 < sig.size(); ++i)
        if (std::abs(sig[i + 1] / sig[i] - ratio) > tol) return false;
    return true;
}

std::vector<StateSpec> sample_pure_resources(int count, std::uint64_t seed, int dim) {
    if (count < 1) throw Error("states-lib", "sampling", "count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> rank(1, 6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // psub r capped so the truncation-population guard holds at N_c >= 20
    std::uniform_real_distribution<double> rdist(0.05, 0.7);
    std::vector<StateSpec> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        if (unit(rng) < 0.6) {
            const int k = std::min(rank(rng), dim);
            std::vector<double> coeff(k);
            double norm = 0.0;
            for (double& c : coeff) {
                c = std::abs(gauss(rng));
                norm += c * c;
            }
            if (norm <= 1e-12) continue;
            std::string text = "bell:";
            for (int i = 0; i < k; ++i) {
                if (i) text += ',';
                text += "c" + std::to_string(i) + "=" + format_double(coeff[i]);
            }
            out.push_back(parse_state_spec(text, dim));
        } else {
            out.push_back(parse_state_spec("psub-svs:r=" + format_double(rdist(rng)), dim));
        }
    }
    return out;
}

double svs_entropy(double r) {
    if (r <= 0.0) return 0.0;
    const double c2 = std::cosh(r) * std::cosh(r);
    const double s2 = std::sinh(r) * std::sinh(r);
    return c2 * std::log2(c2) - s2 * std::log2(s2);
}

double svs_frontier_delta(double entropy) {
    if (entropy <= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (svs_entropy(hi) < entropy) {
        hi *= 2.0;
        if (hi > 1e3) throw Error("states-lib", "frontier", "entropy out of invertible range");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (svs_entropy(mid) < entropy)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(-(lo + hi));  // e^{-2r} at r = (lo+hi)/2
}

}  // namespace cvtele
