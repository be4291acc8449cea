#include "latticeweak/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "latticeweak/compiler.hpp"
#include "latticeweak/rng.hpp"

namespace latticeweak {

Statevector::Statevector(int nqubits) : nqubits_(nqubits) {
    if (nqubits < 1 || nqubits > 26)
        throw std::invalid_argument("simulator: qubit count out of supported range");
    amp_ = Eigen::VectorXcd::Zero(1ll << nqubits);
    amp_(0) = 1.0;
}

void Statevector::apply(const Gate& g) {
    const std::int64_t dim = amp_.size();
    const std::int64_t bit0 = 1ll << g.q0;
    using cd = std::complex<double>;
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            for (std::int64_t i = 0; i < dim; ++i) {
                if (i & bit0) continue;
                const cd a = amp_(i), b = amp_(i | bit0);
                amp_(i) = s * (a + b);
                amp_(i | bit0) = s * (a - b);
            }
            break;
        }
        case GateKind::X: {
            for (std::int64_t i = 0; i < dim; ++i)
                if (!(i & bit0)) std::swap(amp_(i), amp_(i | bit0));
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            for (std::int64_t i = 0; i < dim; ++i) {
                if (i & bit0) continue;
                const cd a = amp_(i), b = amp_(i | bit0);
                amp_(i) = c * a - s * b;
                amp_(i | bit0) = s * a + c * b;
            }
            break;
        }
        case GateKind::RZ: {
            const cd p0 = std::exp(cd(0, -g.angle / 2)), p1 = std::exp(cd(0, g.angle / 2));
            for (std::int64_t i = 0; i < dim; ++i) amp_(i) *= (i & bit0) ? p1 : p0;
            break;
        }
        case GateKind::CNOT: {
            const std::int64_t bit1 = 1ll << g.q1;
            for (std::int64_t i = 0; i < dim; ++i)
                if ((i & bit0) && !(i & bit1)) std::swap(amp_(i), amp_(i | bit1));
            break;
        }
        case GateKind::Reset: {
            double p0 = 0;
            for (std::int64_t i = 0; i < dim; ++i)
                if (!(i & bit0)) p0 += std::norm(amp_(i));
            if (p0 < 1e-15)
                throw std::runtime_error("simulator: reset on a qubit with no |0> weight");
            const double scale = 1.0 / std::sqrt(p0);
            for (std::int64_t i = 0; i < dim; ++i)
                amp_(i) = (i & bit0) ? cd(0) : amp_(i) * scale;
            break;
        }
    }
}

void Statevector::apply(const Circuit& c) {
    if (c.nqubits > nqubits_)
        throw std::invalid_argument("simulator: circuit wider than statevector");
    for (const auto& g : c.gates) apply(g);
}

double Statevector::prob_bit(int q, int bit) const {
    const std::int64_t mask = 1ll << q;
    double p = 0;
    for (std::int64_t i = 0; i < amp_.size(); ++i)
        if (((i & mask) != 0) == (bit != 0)) p += std::norm(amp_(i));
    return p;
}

double Statevector::norm() const { return amp_.norm(); }

namespace {

std::string bitstring_of(std::uint64_t index, int nqubits) {
    std::string s(static_cast<std::size_t>(nqubits), '0');
    for (int q = 0; q < nqubits; ++q)
        if ((index >> q) & 1ull) s[static_cast<std::size_t>(nqubits - 1 - q)] = '1';
    return s;
}

std::uint64_t index_of(const std::string& bits) {
    std::uint64_t idx = 0;
    const int n = static_cast<int>(bits.size());
    for (int i = 0; i < n; ++i)
        if (bits[static_cast<std::size_t>(i)] == '1') idx |= 1ull << (n - 1 - i);
    return idx;
}

}  // namespace

std::string ShotResult::to_json_string() const {
    nlohmann::json j;
    j["shots"] = shots;
    j["seed"] = seed;
    j["kept"] = kept;
    j["counts"] = nlohmann::json::object();
    for (const auto& [bits, n] : counts) j["counts"][bits] = n;
    return j.dump(2);
}

ShotResult run(const Circuit& c, int shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("simulator: shots must be >= 1");
    Statevector sv(c.nqubits);
    sv.apply(c);
    const Eigen::VectorXcd& amp = sv.amplitudes();
    std::vector<double> cum(static_cast<std::size_t>(amp.size()));
    double acc = 0;
    for (std::int64_t i = 0; i < amp.size(); ++i) {
        acc += std::norm(amp(i));
        cum[static_cast<std::size_t>(i)] = acc;
    }
    ShotResult r;
    r.shots = shots;
    r.seed = seed;
    r.kept = shots;
    CounterRng rng(seed);
    for (int s = 0; s < shots; ++s) {
        const double u = rng.next_double() * acc;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::uint64_t idx = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cum.begin(), amp.size() - 1));
        ++r.counts[bitstring_of(idx, c.nqubits)];
    }
    return r;
}

double bitstring_baryon_number(std::uint64_t index, const QubitLayout& layout) {
    // B = (1/3) sum_quark-modes n; particle occupied = bit 0, antiparticle = bit 1.
    double b = 0;
    for (int site = 0; site < layout.L(); ++site)
        for (Species sp : {Species::u, Species::d, Species::ubar, Species::dbar})
            for (int c = 0; c < 3; ++c) {
                const int q = layout.index(site, sp, c);
                const int bit = static_cast<int>((index >> q) & 1ull);
                const bool anti = (sp == Species::ubar || sp == Species::dbar);
                const int occ = anti ? bit : 1 - bit;
                b += (anti ? -1.0 : 1.0) * occ / 3.0;
            }
    return b;
}

double bitstring_lepton_number(std::uint64_t index, const QubitLayout& layout) {
    double l = 0;
    for (int site = 0; site < layout.L(); ++site)
        for (Species sp : {Species::nu, Species::e, Species::nubar, Species::ebar}) {
            const int q = layout.index(site, sp);
            const int bit = static_cast<int>((index >> q) & 1ull);
            const bool anti = (sp == Species::nubar || sp == Species::ebar);
            const int occ = anti ? bit : 1 - bit;
            l += (anti ? -1.0 : 1.0) * occ;
        }
    return l;
}

ShotResult post_select(const ShotResult& r, const QubitLayout& layout,
                       const PostSelectFilters& f) {
    ShotResult out;
    out.shots = r.shots;
    out.seed = r.seed;
    for (const auto& [bits, n] : r.counts) {
        const std::uint64_t idx = index_of(bits);
        if (f.baryon && std::abs(bitstring_baryon_number(idx, layout) - 1.0) > 1e-9) continue;
        if (f.lepton && std::abs(bitstring_lepton_number(idx, layout)) > 1e-9) continue;
        if (f.ancilla >= 0 && ((idx >> f.ancilla) & 1ull)) continue;
        out.counts[bits] = n;
        out.kept += n;
    }
    if (out.kept == 0)
        throw std::runtime_error("simulator: post-selection rejected every shot");
    return out;
}

DecayCurve trotter_decay_table(const LatticeParams& p, int steps,
                               const std::vector<double>& times) {
    if (p.L != 1) throw std::invalid_argument("simulator: decay table is defined at L=1");
    const QubitLayout layout(LayoutScheme::Interleaved, p.L);
    const int nq = layout.nqubits() + 1;  // hop-parity ancilla
    const Circuit prep = state_prep_circuit(p, nq);
    const int e_qubit = layout.index(0, Species::e);
    DecayCurve curve;
    curve.times = times;
    for (double t : times) {
        Statevector sv(nq);
        sv.apply(prep);
        if (t != 0.0) sv.apply(trotter_step_circuit(p, layout, t, steps));
        curve.probability.push_back(sv.prob_bit(e_qubit, 0));
    }
    return curve;
}

}  // namespace latticeweak
