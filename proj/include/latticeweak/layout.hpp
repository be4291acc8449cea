#pragma once

#include <stdexcept>
#include <string>

namespace latticeweak {

enum class Species { u, d, ubar, dbar, nu, e, nubar, ebar };

inline bool is_quark(Species s) {
    return s == Species::u || s == Species::d || s == Species::ubar || s == Species::dbar;
}

enum class LayoutScheme {
    Interleaved,     // per-site block: u(3) d(3) ubar(3) dbar(3) nu e nubar ebar
    GroupedLeptons,  // all quark blocks first, all lepton blocks at the end
};

// Map from (site, species, color) to JW qubit index.  16 qubits per spatial
// site.  Occupation convention: fermion site occupied = spin up (|0>, Z=+1);
// antifermion site occupied = spin down (|1>, Z=-1).
class QubitLayout {
  public:
    QubitLayout(LayoutScheme scheme, int L) : scheme_(scheme), L_(L) {
        if (L < 1) throw std::invalid_argument("layout: L must be >= 1");
    }

    LayoutScheme scheme() const { return scheme_; }
    int L() const { return L_; }
    int nqubits() const { return 16 * L_; }

    int index(int site, Species sp, int color = -1) const {
        if (site < 0 || site >= L_) throw std::out_of_range("layout: site out of range");
        if (is_quark(sp)) {
            if (color < 0 || color > 2) throw std::out_of_range("layout: quark color out of range");
        } else if (color != -1) {
            throw std::invalid_argument("layout: color given for lepton species");
        }
        const int qoff = quark_offset(sp) + (is_quark(sp) ? color : 0);
        const int loff = lepton_offset(sp);
        switch (scheme_) {
            case LayoutScheme::Interleaved:
                return 16 * site + (is_quark(sp) ? qoff : 12 + loff);
            case LayoutScheme::GroupedLeptons:
                return is_quark(sp) ? 12 * site + qoff : 12 * L_ + 4 * site + loff;
        }
        throw std::logic_error("layout: unknown scheme");
    }

  private:
    static int quark_offset(Species sp) {
        switch (sp) {
            case Species::u: return 0;
            case Species::d: return 3;
            case Species::ubar: return 6;
            case Species::dbar: return 9;
            default: return 0;
        }
    }
    static int lepton_offset(Species sp) {
        switch (sp) {
            case Species::nu: return 0;
            case Species::e: return 1;
            case Species::nubar: return 2;
            case Species::ebar: return 3;
            default: return 0;
        }
    }

    LayoutScheme scheme_;
    int L_;
};

inline LayoutScheme layout_scheme_from_string(const std::string& s) {
    if (s == "interleaved") return LayoutScheme::Interleaved;
    if (s == "grouped") return LayoutScheme::GroupedLeptons;
    throw std::invalid_argument("layout: unknown scheme '" + s + "'");
}

}  // namespace latticeweak
