#include "arcmusic/msr.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "arcmusic/errors.hpp"
#include "arcmusic/parallel.hpp"

namespace arcmusic {

DirectionSet build_directions(int n, DirectionScheme scheme) {
    if (n < 2) throw std::domain_error("build_directions: need n >= 2");
    DirectionSet out;
    out.count = n;
    out.scheme = scheme;
    out.vectors.reserve(n);
    const double denom = (scheme == DirectionScheme::paper_formula) ? (n - 1.0) : n;
    for (int l = 1; l <= n; ++l) {
        const double angle = 2.0 * M_PI * (l - 1.0) / denom;
        out.vectors.push_back(-Vec2::from_angle(angle));
    }
    return out;
}

MsrMatrix assemble_msr(const std::vector<ArcCurve>& arcs, double wavenumber,
                       const DirectionSet& directions, int nodes) {
    // The solver constructor rejects overlapping arcs (GeometryError).
    NeumannArcSolver solver(arcs, wavenumber, nodes);
    return assemble_msr(solver, directions);
}

MsrMatrix assemble_msr(const NeumannArcSolver& solver, const DirectionSet& directions) {
    const int n = directions.count;
    MsrMatrix out;
    out.entries = CMatrix(n, n);
    out.directions = directions;
    out.wavenumber = solver.wavenumber();
    // Incident problems are independent; each writes one column.
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t lu) {
        const int l = static_cast<int>(lu);
        const DensitySolution density = solver.solve(directions.vectors[l]);
        for (int j = 0; j < n; ++j)
            out.entries(j, l) = solver.far_field(density, -directions.vectors[j]).value;
    });
    return out;
}

MsrMatrix add_awgn(const MsrMatrix& msr, const NoiseSpec& spec) {
    if (std::isinf(spec.snr_db)) return msr;  // sentinel: noise disabled
    if (!std::isfinite(spec.snr_db)) throw std::domain_error("add_awgn: snr_db must be finite or +inf");
    const int n = msr.entries.rows();
    double power = 0.0;
    for (const cplx& v : msr.entries.data()) power += std::norm(v);
    power /= static_cast<double>(n) * n;
    const double noise_power = power / std::pow(10.0, spec.snr_db / 10.0);
    const double sigma = std::sqrt(0.5 * noise_power);

    // Hand-rolled Box-Muller on top of mt19937_64 keeps the stream identical
    // across standard libraries; row-major generation order is part of the
    // format contract.
    std::mt19937_64 rng(spec.seed);
    auto next_unit = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    };
    MsrMatrix out = msr;
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const double u1 = next_unit();
            const double u2 = next_unit();
            const double mag = std::sqrt(-2.0 * std::log(u1));
            out.entries(j, l) += sigma * cplx{mag * std::cos(2.0 * M_PI * u2),
                                              mag * std::sin(2.0 * M_PI * u2)};
        }
    }
    out.noise_applied = spec;
    return out;
}

SvdResult msr_svd(const MsrMatrix& msr) { return svd_jacobi(msr.entries); }

int select_rank(std::span<const double> singular_values, double tau) {
    if (singular_values.empty() || !(singular_values.front() > 0.0))
        throw DataError("select_rank: leading singular value must be positive");
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("select_rank: tau must be in (0,1)");
    int m = 0;
    for (const double s : singular_values)
        if (s / singular_values.front() >= tau) ++m;
    return m;
}

double symmetry_defect(const CMatrix& k) {
    double diff = 0.0;
    for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j) diff += std::norm(k(i, j) - k(j, i));
    const double base = k.frobenius();
    return base > 0.0 ? std::sqrt(diff) / base : 0.0;
}

void write_msr(const MsrMatrix& msr, const std::string& path) {
    std::ostringstream out;
    out << "# msr 1\n";
    out << "# n " << msr.entries.rows() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", msr.wavenumber);
    out << "# k " << buf << "\n";
    out << "# scheme "
        << (msr.directions.scheme == DirectionScheme::paper_formula ? "paper" : "uniform") << "\n";
    for (int j = 0; j < msr.entries.rows(); ++j) {
        for (int l = 0; l < msr.entries.cols(); ++l) {
            const cplx v = msr.entries(j, l);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", v.real(), v.imag());
            out << buf << (l + 1 < msr.entries.cols() ? " " : "");
        }
        out << "\n";
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write MSR file: " + path);
    file << out.str();
}

MsrMatrix load_msr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open MSR file: " + path);
    int n = 0;
    double k = 0.0;
    std::string scheme_name = "uniform";
    std::vector<cplx> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "n") hs >> n;
            else if (key == "k") hs >> k;
            else if (key == "scheme") hs >> scheme_name;
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        while (ls >> cell) {
            const auto comma = cell.find(',');
            if (comma == std::string::npos) throw DataError("MSR file: bad entry '" + cell + "'");
            try {
                values.emplace_back(std::stod(cell.substr(0, comma)),
                                    std::stod(cell.substr(comma + 1)));
            } catch (const std::exception&) {
                throw DataError("MSR file: bad entry '" + cell + "'");
            }
        }
    }
    if (n <= 0 || static_cast<std::size_t>(n) * n != values.size())
        throw DataError("MSR file: inconsistent dimensions in " + path);
    MsrMatrix out;
    out.wavenumber = k;
    out.directions = build_directions(
        n, scheme_name == "paper" ? DirectionScheme::paper_formula : DirectionScheme::uniform);
    out.entries = CMatrix(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) out.entries(j, l) = values[static_cast<std::size_t>(j) * n + l];
    return out;
}

std::string singular_value_csv(std::span<const double> singular_values, int selected) {
    std::ostringstream out;
    out << "m,sigma,sigma_over_sigma1,selected\n";
    const double s1 = singular_values.empty() ? 0.0 : singular_values.front();
    char buf[96];
    for (std::size_t m = 0; m < singular_values.size(); ++m) {
        const double ratio = s1 > 0.0 ? singular_values[m] / s1 : 0.0;
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%d", m + 1, singular_values[m], ratio,
                      static_cast<int>(m) < selected ? 1 : 0);
        out << buf << "\n";
    }
    return out.str();
}

}  // namespace arcmusic
