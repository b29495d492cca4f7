#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>

#include "kkwave/config.hpp"
#include "kkwave/io.hpp"

using namespace kkwave;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("kkwave_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& body) {
    std::ofstream os(path);
    os << body;
}

}  // namespace

TEST_CASE("snapshot roundtrip is exact") {
    TempDir tmp;
    const SpatialGrid grid = make_grid(-51.2, 51.2, 512);
    WaveFunction wf = gaussian_packet(grid, 10.0, 2.0, 1.5);
    wf.time = 3.25;
    const std::string path = tmp.file("snap.kkw1");
    save_snapshot(path, wf);
    const WaveFunction back = load_snapshot(path);
    CHECK(back.time == wf.time);
    CHECK(back.grid.size() == 512);
    CHECK(back.grid.x_min() == grid.x_min());
    for (std::size_t j = 0; j < 512; ++j) CHECK(back.amp[j] == wf.amp[j]);

    write_text(tmp.file("bad.kkw1"), "NOPE");
    CHECK_THROWS(load_snapshot(tmp.file("bad.kkw1")));
}

TEST_CASE("tabulated potential csv loader") {
    TempDir tmp;
    write_text(tmp.file("pot.csv"),
               "# x, re, im\n-1.0,0.5,-0.1\n0.0,1.0,0.0\n1.0,0.5,0.1\n");
    const TabulatedPotential tab = load_tabulated_potential_csv(tmp.file("pot.csv"));
    REQUIRE(tab.x.size() == 3);
    CHECK(tab.v[0] == cplx(0.5, -0.1));
    CHECK(tab.v[1] == cplx(1.0, 0.0));

    write_text(tmp.file("two.csv"), "0.0,1.0\n2.0,3.0\n");
    CHECK(load_tabulated_potential_csv(tmp.file("two.csv")).v[1] == cplx(3.0, 0.0));

    write_text(tmp.file("unsorted.csv"), "1.0,1.0\n0.0,2.0\n");
    CHECK_THROWS(load_tabulated_potential_csv(tmp.file("unsorted.csv")));
}

TEST_CASE("tabulated force csv loader") {
    TempDir tmp;
    write_text(tmp.file("force.csv"), "t,F\n0.0,0.1\n0.5,0.2\n1.0,0.1\n");
    const TabulatedForce f = load_tabulated_force_csv(tmp.file("force.csv"));
    CHECK(f.dt == doctest::Approx(0.5));
    CHECK(f.t_end == doctest::Approx(1.0));
    REQUIRE(f.samples.size() == 3);

    write_text(tmp.file("late.csv"), "1.0,0.1\n2.0,0.2\n");
    CHECK_THROWS(load_tabulated_force_csv(tmp.file("late.csv")));
    write_text(tmp.file("jitter.csv"), "0.0,0.1\n0.5,0.2\n1.2,0.1\n");
    CHECK_THROWS(load_tabulated_force_csv(tmp.file("jitter.csv")));
}

TEST_CASE("config file parsing and overrides") {
    TempDir tmp;
    write_text(tmp.file("run.cfg"),
               "# comment line\n"
               "grid.n = 1024\n"
               "packet.p0 = 2.5   # trailing comment\n"
               "potential.kind = gaussian\n"
               "solver.engine = momentum\n");
    RunConfig c = parse_config_file(tmp.file("run.cfg"));
    CHECK(c.n == 1024);
    CHECK(c.p0 == doctest::Approx(2.5));
    CHECK(c.potential_kind == "gaussian");
    CHECK(c.engine == "momentum");

    apply_overrides(c, {"packet.w=3.0", "force.kind=cosine"});
    CHECK(c.w == doctest::Approx(3.0));
    CHECK(c.force_kind == "cosine");

    CHECK_THROWS_AS(apply_overrides(c, {"no.such.key=1"}), ConfigError);
    CHECK_THROWS_AS(apply_overrides(c, {"grid.n"}), ConfigError);
    CHECK_THROWS_AS(apply_overrides(c, {"grid.n=notanumber"}), ConfigError);
}

TEST_CASE("config validation") {
    RunConfig c;
    c.n = 1000;  // not a power of two
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.n = 8192;
    c.engine = "warp";
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.engine = "split_step";
    c.potential_kind = "tabulated";  // file missing
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.potential_kind = "none";
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("spec builders") {
    RunConfig c;
    c.potential_kind = "single_pole";
    c.v0 = 3.0;
    c.alpha = 0.4;
    c.envelope = true;
    c.envelope_b = 20.0;
    const PotentialSpec spec = potential_from(c);
    CHECK(std::holds_alternative<SinglePoleKK>(spec.shape));
    CHECK(spec.envelope.has_value());

    c.force_kind = "cosine";
    c.f0 = 0.1;
    c.period = 8.0;
    const ForceSpec force = force_from(c);
    CHECK(force_value(force, 0.0) == doctest::Approx(0.1));

    const SpatialGrid grid = grid_from(c);
    CHECK(grid.size() == c.n);
    CHECK(grid.x_min() == doctest::Approx(c.x_min));
}

TEST_CASE("manifest lists every setting") {
    const RunConfig c;
    const auto m = manifest_of(c);
    auto has = [&](const std::string& key) {
        for (const auto& [k, v] : m)
            if (k == key) return true;
        return false;
    };
    for (const char* key : {"grid.n", "packet.p0", "potential.kind", "force.kind",
                            "solver.engine", "solver.dt", "probe.v_d", "threads"})
        CHECK(has(key));
}

TEST_CASE("report writer emits key = value lines") {
    TempDir tmp;
    write_report(tmp.file("r.txt"), {{"alpha", "1"}, {"beta", "two"}});
    std::ifstream is(tmp.file("r.txt"));
    std::string l1, l2;
    std::getline(is, l1);
    std::getline(is, l2);
    CHECK(l1 == "alpha = 1");
    CHECK(l2 == "beta = two");
}
