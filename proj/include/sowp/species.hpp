#pragma once

// Anion / residual-atom data for np^6 -> np^5 2P_j photodetachment.
//
// The anion bound-state energy in the channel leaving the atom in level j is
//   E_{3/2} = -EA,   E_{1/2} = -(EA + splitting),
// so kappa_j = sqrt(-2 E_j) and the atomic beat frequency is the splitting.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "keyvalue.hpp"
#include "units.hpp"

namespace sowp {

/// Fine-structure level of the residual atom.
enum class Level { j3_2, j1_2 };

inline constexpr int two_j(Level level) { return level == Level::j3_2 ? 3 : 1; }

struct Species {
    std::string name;
    double ea_ev = 0.0;          // electron affinity to the j=3/2 ground level
    double splitting_cm1 = 0.0;  // 2P_{1/2} - 2P_{3/2}
    double b_j3_2 = 0.0;         // asymptotic normalization constants, a.u.
    double b_j1_2 = 0.0;
    int l = 1;

    /// Anion bound-state energy E_j (a.u., negative).
    double energy(Level level) const {
        const double e32 = -units::ev_to_au(ea_ev);
        return level == Level::j3_2 ? e32 : e32 - units::cm1_to_au(splitting_cm1);
    }

    double kappa(Level level) const { return std::sqrt(-2.0 * energy(level)); }

    double asymptotic_constant(Level level) const {
        return level == Level::j3_2 ? b_j3_2 : b_j1_2;
    }

    /// omega_b = E_{1/2,atom} - E_{3/2,atom}, a.u.
    double beat_frequency() const { return units::cm1_to_au(splitting_cm1); }

    /// tau_b in fs.
    double beat_period_fs() const { return units::splitting_to_beat_period(splitting_cm1); }

    /// Throws ConfigError naming the offending field.
    void validate() const {
        auto fail = [&](const std::string& field, const std::string& why) {
            throw ConfigError("species '" + name + "': field '" + field + "' " + why);
        };
        if (name.empty()) fail("name", "must not be empty");
        if (!(ea_ev > 0.0)) fail("ea_ev", "must be positive (bound state energy E_3/2 < 0)");
        if (!(splitting_cm1 > 0.0)) fail("splitting_cm1", "must be positive");
        if (!(b_j3_2 > 0.0)) fail("b_au", "must be positive");
        if (!(b_j1_2 > 0.0)) fail("b_au", "must be positive");
        if (l < 0) fail("l", "must be non-negative");
    }
};

/// Shipped defaults. EA from photodetachment threshold spectroscopy and B from
/// the strong-field detachment literature; both are external inputs, not
/// derived here. data/species.dat carries the same records.
inline constexpr const char* default_species_text = R"(# Halogen anion data.
# ea_ev          electron affinity (anion -> atom 2P_3/2), eV
# splitting_cm1  atomic fine-structure splitting 2P_1/2 - 2P_3/2, cm^-1
# b_au           asymptotic normalization constant B of the np orbital,
#                psi ~ B r^-1 exp(-kappa r); one value shared by both
#                fine-structure channels unless b_au_j32 / b_au_j12 are given.
# l              orbital angular momentum of the detached electron
#
# EA and splittings: experimental spectroscopic values.
# B: approximate literature values. Externally sourced, edit freely.

name = F
ea_ev = 3.4012
splitting_cm1 = 404.10
b_au = 0.7
l = 1

name = Cl
ea_ev = 3.6127
splitting_cm1 = 882.35
b_au = 1.3
l = 1

name = Br
ea_ev = 3.3636
splitting_cm1 = 3685.24
b_au = 1.5
l = 1
)";

namespace detail {

inline std::vector<Species> species_from_entries(const std::vector<kv::Entry>& entries,
                                                 const std::string& source) {
    struct Pending {
        Species s;
        std::optional<double> b, b32, b12;
    };
    std::vector<Species> out;
    std::optional<Pending> cur;

    auto flush = [&] {
        if (!cur) return;
        auto& p = *cur;
        if (!p.b && !(p.b32 && p.b12)) {
            throw ConfigError(source + ": species '" + p.s.name + "': field 'b_au' missing");
        }
        p.s.b_j3_2 = p.b32.value_or(p.b.value_or(0.0));
        p.s.b_j1_2 = p.b12.value_or(p.b.value_or(0.0));
        p.s.validate();
        out.push_back(p.s);
        cur.reset();
    };

    for (const auto& e : entries) {
        const std::string where = source + ":" + std::to_string(e.line);
        if (e.key == "name") {
            flush();
            cur = Pending{};
            cur->s.name = e.value;
            continue;
        }
        if (!cur) throw ConfigError(where + ": '" + e.key + "' before any 'name =' line");
        double x = 0.0;
        if (e.key == "l") {
            int l = 0;
            if (!kv::to_int(e.value, l)) throw ConfigError(where + ": 'l' is not an integer");
            cur->s.l = l;
            continue;
        }
        if (!kv::to_double(e.value, x)) {
            throw ConfigError(where + ": value of '" + e.key + "' is not a number");
        }
        if (e.key == "ea_ev") cur->s.ea_ev = x;
        else if (e.key == "splitting_cm1") cur->s.splitting_cm1 = x;
        else if (e.key == "b_au") cur->b = x;
        else if (e.key == "b_au_j32") cur->b32 = x;
        else if (e.key == "b_au_j12") cur->b12 = x;
        else throw ConfigError(where + ": unknown species field '" + e.key + "'");
    }
    flush();
    return out;
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace detail

inline std::vector<Species> parse_species(const std::string& text, const std::string& source) {
    return detail::species_from_entries(kv::parse_string(text, source), source);
}

/// Reads a species data file. Parse errors carry the line number.
inline std::vector<Species> load_species(const std::string& path) {
    return detail::species_from_entries(kv::parse_file(path), path);
}

inline std::vector<Species> default_species() {
    return parse_species(default_species_text, "<builtin>");
}

/// Case-insensitive lookup by name.
inline const Species& find_species(const std::vector<Species>& table, const std::string& name) {
    const auto key = detail::lower(name);
    for (const auto& s : table) {
        if (detail::lower(s.name) == key) return s;
    }
    throw ConfigError("unknown species '" + name + "'");
}

}  // namespace sowp
