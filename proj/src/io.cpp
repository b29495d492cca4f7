#include "kkwave/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kkwave {

namespace {

// the build targets little-endian hosts; the format is defined as such
void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double get_f64(std::istream& is) {
    double v = 0.0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(std::stod(cell));
    }
    return out;
}

bool data_row(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) return false;
    const char c = line[pos];
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

}  // namespace

void save_snapshot(const std::string& path, const WaveFunction& wf) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
    os.write("KKW1", 4);
    put_u64(os, wf.grid.size());
    put_f64(os, wf.grid.x_min());
    put_f64(os, wf.grid.x_max());
    put_f64(os, wf.time);
    for (const auto& a : wf.amp) {
        put_f64(os, a.real());
        put_f64(os, a.imag());
    }
    if (!os) throw std::runtime_error("save_snapshot: write failed for " + path);
}

WaveFunction load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "KKW1", 4) != 0)
        throw std::runtime_error("load_snapshot: bad magic in " + path);
    const std::uint64_t n = get_u64(is);
    const double x_min = get_f64(is);
    const double x_max = get_f64(is);
    const double time = get_f64(is);
    WaveFunction wf{make_grid(x_min, x_max, n), std::vector<cplx>(n), time};
    for (auto& a : wf.amp) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        a = cplx(re, im);
    }
    if (!is) throw std::runtime_error("load_snapshot: truncated file " + path);
    return wf;
}

void write_field_csv(const std::string& path, const WaveFunction& wf) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
    os << "x,re,im,density\n";
    os.precision(17);
    for (std::size_t j = 0; j < wf.grid.size(); ++j)
        os << wf.grid.x(j) << ',' << wf.amp[j].real() << ',' << wf.amp[j].imag()
           << ',' << std::norm(wf.amp[j]) << '\n';
}

void write_trajectory_index_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("write_trajectory_index_csv: cannot open " + path);
    os << "t,norm,mean_x,mean_p,negative_momentum_fraction\n";
    os.precision(17);
    for (const auto& snap : traj.snapshots)
        os << snap.time << ',' << norm(snap) << ',' << mean_x(snap) << ','
           << mean_p(snap) << ',' << negative_momentum_fraction(snap) << '\n';
}

void write_amplitudes_csv(const std::string& path, const ScatteringAmplitudes& amps) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_amplitudes_csv: cannot open " + path);
    os << "p,re_t,im_t,re_rminus,im_rminus,re_rplus,im_rplus\n";
    os.precision(17);
    for (std::size_t i = 0; i < amps.p.size(); ++i)
        os << amps.p[i] << ',' << amps.t[i].real() << ',' << amps.t[i].imag() << ','
           << amps.r_minus[i].real() << ',' << amps.r_minus[i].imag() << ','
           << amps.r_plus[i].real() << ',' << amps.r_plus[i].imag() << '\n';
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_report: cannot open " + path);
    for (const auto& [k, v] : entries) os << k << " = " << v << '\n';
}

TabulatedPotential load_tabulated_potential_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("load_tabulated_potential_csv: cannot open " + path);
    TabulatedPotential tab;
    std::string line;
    while (std::getline(is, line)) {
        if (!data_row(line)) continue;
        const auto row = parse_csv_row(line);
        if (row.size() != 2 && row.size() != 3)
            throw std::runtime_error(
                "load_tabulated_potential_csv: need 2 or 3 columns in " + path);
        tab.x.push_back(row[0]);
        tab.v.emplace_back(row[1], row.size() == 3 ? row[2] : 0.0);
    }
    if (tab.x.size() < 2)
        throw std::runtime_error("load_tabulated_potential_csv: too few rows in " +
                                 path);
    for (std::size_t i = 1; i < tab.x.size(); ++i)
        if (tab.x[i] <= tab.x[i - 1])
            throw std::runtime_error(
                "load_tabulated_potential_csv: x must be strictly increasing in " +
                path);
    return tab;
}

TabulatedForce load_tabulated_force_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_tabulated_force_csv: cannot open " + path);
    std::vector<double> t, f;
    std::string line;
    while (std::getline(is, line)) {
        if (!data_row(line)) continue;
        const auto row = parse_csv_row(line);
        if (row.size() != 2)
            throw std::runtime_error("load_tabulated_force_csv: need 2 columns in " +
                                     path);
        t.push_back(row[0]);
        f.push_back(row[1]);
    }
    if (t.size() < 2)
        throw std::runtime_error("load_tabulated_force_csv: too few rows in " + path);
    if (std::abs(t.front()) > 1e-12)
        throw std::runtime_error("load_tabulated_force_csv: table must start at t=0");
    const double dt = t[1] - t[0];
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs(t[i] - t[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::runtime_error(
                "load_tabulated_force_csv: time spacing must be uniform in " + path);
    TabulatedForce tab;
    tab.dt = dt;
    tab.t_end = t.back();
    tab.switch_off = t.back();
    tab.samples = std::move(f);
    return tab;
}

}  // namespace kkwave
