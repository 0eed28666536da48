#pragma once

// CSV artifacts. '.' decimal separator, 17 significant digits, mandatory header.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "fit.hpp"
#include "keyvalue.hpp"

namespace sowp::csv {

inline void prepare(std::ostream& os) {
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
}

inline std::string quantum_number(int doubled) {
    switch (doubled) {
        case 3: return "1.5";
        case 1: return "0.5";
        case -1: return "-0.5";
        case -3: return "-1.5";
        default: return std::to_string(doubled / 2);
    }
}

/// Rows "w,<value>" and "g,<value>", then j',m',j,m,re,im for all 36 elements.
inline void write_density(std::ostream& os, const DensityMatrix& rho, double g) {
    prepare(os);
    os << "w," << rho.total_probability() << "\n";
    os << "g," << g << "\n";
    os << "j_prime,m_prime,j,m,re,im\n";
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            const auto& sa = atomic_states[a];
            const auto& sb = atomic_states[b];
            const cplx v = rho.element(a, b);
            os << quantum_number(two_j(sa.level)) << "," << quantum_number(sa.two_m) << ","
               << quantum_number(two_j(sb.level)) << "," << quantum_number(sb.two_m) << "," << v.real()
               << "," << v.imag() << "\n";
        }
    }
}

inline void write_trace(std::ostream& os, const SignalTrace& tr) {
    prepare(os);
    os << "t_fs,S\n";
    for (std::size_t i = 0; i < tr.t_fs.size(); ++i) os << tr.t_fs[i] << "," << tr.signal[i] << "\n";
}

inline void write_sweep(std::ostream& os, const std::vector<SweepPoint>& pts) {
    prepare(os);
    os << "species,N,tau_fwhm_fs,ratio,g,w\n";
    for (const auto& p : pts)
        os << p.species << "," << p.cycles << "," << p.tau_fwhm_fs << "," << p.ratio << "," << p.g << ","
           << p.w << "\n";
}

inline void write_fit(std::ostream& os, const FitResult& fit) {
    prepare(os);
    os << "g0,zeta,rms\n" << fit.g0 << "," << fit.zeta << "," << fit.rms << "\n";
}

/// One row per (threshold, element): rho_3/2_3/2, rho_3/2_1/2, rho_1/2_1/2 and
/// the coherence rho_3/2_1/2_1/2_1/2.
inline void write_buildup(std::ostream& os, const BuildupTrace& tr) {
    prepare(os);
    os << "t_fs,element,re,im,abs,field\n";
    for (const auto& s : tr.steps) {
        auto row = [&](const char* tag, cplx v) {
            os << s.t_fs << "," << tag << "," << v.real() << "," << v.imag() << "," << std::abs(v) << ","
               << s.field << "\n";
        };
        row("rho_3/2_3/2", s.rho(Level::j3_2, 3, Level::j3_2, 3));
        row("rho_3/2_1/2", s.rho(Level::j3_2, 1, Level::j3_2, 1));
        row("rho_1/2_1/2", s.rho(Level::j1_2, 1, Level::j1_2, 1));
        row("rho_3/2_1/2_1/2_1/2", s.rho.coherence_element());
    }
}

/// Reads (ratio, g) pairs back from a sweep CSV.
inline std::vector<SweepPoint> read_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sweep file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("species,N,", 0) != 0) {
        throw ConfigError(path + ": missing sweep header 'species,N,tau_fwhm_fs,ratio,g,w'");
    }
    std::vector<SweepPoint> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        SweepPoint p;
        if (f.size() != 6 || !kv::to_int(f[1], p.cycles) || !kv::to_double(f[2], p.tau_fwhm_fs) ||
            !kv::to_double(f[3], p.ratio) || !kv::to_double(f[4], p.g) || !kv::to_double(f[5], p.w)) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": malformed sweep row");
        }
        p.species = f[0];
        out.push_back(p);
    }
    return out;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write '" + path.string() + "'");
    writer(os);
    if (!os) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace sowp::csv
