#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "gzariski/checks.hpp"

using namespace gz;

namespace {

CheckReport report_of(const char* name) {
    const InstanceDesc* d = find_instance(name);
    REQUIRE(d != nullptr);
    auto r = run_check_suite(*d);
    REQUIRE(r.ok());
    return std::move(r.value());
}

const CheckResult& result_of(const CheckReport& rep, const std::string& id) {
    for (const auto& r : rep.results)
        if (r.id == id) return r;
    REQUIRE(false);
    return rep.results.front();
}

} // namespace

TEST_CASE("the catalog is complete and ordered") {
    const auto& cat = check_catalog();
    CHECK(cat.size() == 48);
    CHECK(std::string(cat.front().id) == "T3.1");
    CHECK(std::string(cat.back().id) == "T4.15");
    CHECK(is_known_check_id("T4.2.3"));
    CHECK(!is_known_check_id("T9.99"));
    CheckReport rep = report_of("INST-A");
    REQUIRE(rep.results.size() == cat.size());
    for (std::size_t i = 0; i < cat.size(); ++i) CHECK(rep.results[i].id == cat[i].id);
}

TEST_CASE("connectedness equivalences pass on the disconnected instance") {
    CheckReport rep = report_of("INST-D");
    CHECK(result_of(rep, "T4.1").out.status == CheckStatus::pass);
    CHECK(result_of(rep, "T4.3").out.status == CheckStatus::pass);
    CHECK(result_of(rep, "T4.15").out.status == CheckStatus::pass);
}

TEST_CASE("the T0 equivalence holds on the negative instances") {
    for (const char* name : {"INST-A", "INST-C"}) {
        CAPTURE(name);
        CheckReport rep = report_of(name);
        CHECK(result_of(rep, "T4.3").out.status == CheckStatus::pass);
        CHECK(result_of(rep, "T3.7").out.status == CheckStatus::pass);
    }
}

TEST_CASE("the ring T0 claim fails honestly under radical semantics") {
    CheckReport rep = report_of("INST-B");
    const CheckResult& r = result_of(rep, "T3.15.6");
    CHECK(r.out.status == CheckStatus::fail);
    CHECK(render_machine_line("INST-B", r) ==
          "check T3.15.6 INST-B FAIL witness=((0),(2)) note=semantics:radical,alt:containment=PASS");
}

TEST_CASE("plain machine lines match the protocol byte for byte") {
    CheckReport rep = report_of("INST-A");
    CHECK(render_machine_line("INST-A", result_of(rep, "T3.1")) == "check T3.1 INST-A PASS");
    CheckReport repd = report_of("INST-D");
    const CheckResult& skipped = result_of(repd, "T4.2.2");
    CHECK(render_machine_line("INST-D", skipped) ==
          "check T4.2.2 INST-D SKIPPED note=hypothesis:zero-submodule-not-a-point");
}

TEST_CASE("hypothesis gates only fire when the hypothesis fails") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        CheckReport rep = report_of(d.name.c_str());
        // every corpus module is quasi-primaryful, so these always run
        CHECK(result_of(rep, "T3.12").out.status != CheckStatus::skipped);
        CHECK(result_of(rep, "T4.1").out.status != CheckStatus::skipped);
        CHECK(result_of(rep, "T4.9").out.status != CheckStatus::skipped);
        CHECK(result_of(rep, "T4.15").out.status != CheckStatus::skipped);
    }
    CHECK(result_of(report_of("INST-Z"), "C4.4.3").out.status == CheckStatus::skipped);
    CHECK(result_of(report_of("INST-A"), "T4.14.1").out.status == CheckStatus::skipped);
    CHECK(result_of(report_of("INST-D"), "T4.14.1").out.status == CheckStatus::pass);
}

TEST_CASE("sampling annotations appear exactly beyond twelve points") {
    CheckReport small = report_of("INST-D");
    CHECK(result_of(small, "T4.2.1").out.note.find("sample:") == std::string::npos);
    CheckReport big = report_of("INST-E");
    CHECK(result_of(big, "T4.2.1").out.note.find("sample:seed=9e3779b97f4a7c15") != std::string::npos);
    CHECK(result_of(big, "T4.2.1").out.status == CheckStatus::pass);
    CHECK(result_of(big, "P3.2.6").out.status == CheckStatus::pass);
    CHECK(result_of(big, "T4.7").out.status == CheckStatus::pass);
}

TEST_CASE("reports are deterministic and selections filter the output") {
    std::vector<CheckReport> reports;
    for (const auto& d : builtin_corpus()) {
        auto r = run_check_suite(d);
        REQUIRE(r.ok());
        reports.push_back(std::move(r.value()));
    }
    std::string a = emit_report(reports, ReportFormat::machine);
    std::vector<CheckReport> again;
    for (const auto& d : builtin_corpus()) {
        auto r = run_check_suite(d);
        REQUIRE(r.ok());
        again.push_back(std::move(r.value()));
    }
    CHECK(a == emit_report(again, ReportFormat::machine));

    std::vector<std::string> sel = {"T3.1"};
    std::string filtered = emit_report(reports, ReportFormat::machine, sel);
    std::istringstream lines(filtered);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        CHECK(line.rfind("check T3.1 ", 0) == 0);
        ++count;
    }
    CHECK(count == builtin_corpus().size());

    CHECK(report_exit_code(reports, sel) == 0);
    CHECK(report_exit_code(reports, {"T3.15.6"}) == 1);
    CHECK(report_exit_code(reports) == 1);
}

TEST_CASE("the machine corpus report matches the golden file") {
    const char* golden_path = std::getenv("GZ_GOLDEN");
    REQUIRE(golden_path != nullptr);
    std::ifstream in(golden_path);
    REQUIRE(in.good());
    std::ostringstream golden;
    golden << in.rdbuf();
    std::vector<CheckReport> reports;
    for (const auto& d : builtin_corpus()) {
        auto r = run_check_suite(d);
        REQUIRE(r.ok());
        reports.push_back(std::move(r.value()));
    }
    CHECK(emit_report(reports, ReportFormat::machine) == golden.str());
}

TEST_CASE("cache hits reproduce the report byte for byte") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / ("gzcache-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const InstanceDesc* d = find_instance("INST-D");
    auto first = run_check_suite_cached(*d, dir.string());
    REQUIRE(first.ok());
    auto second = run_check_suite_cached(*d, dir.string());
    REQUIRE(second.ok());
    CHECK(emit_report({first.value()}, ReportFormat::machine) ==
          emit_report({second.value()}, ReportFormat::machine));
    // a corrupted cache entry is ignored, not trusted
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ofstream out(entry.path(), std::ios::trunc);
        out << "garbage\n";
    }
    auto third = run_check_suite_cached(*d, dir.string());
    REQUIRE(third.ok());
    CHECK(emit_report({third.value()}, ReportFormat::machine) ==
          emit_report({first.value()}, ReportFormat::machine));
    std::filesystem::remove_all(dir);
}

TEST_CASE("memoized variety tables agree with the direct variety computation") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        auto model = build_model(d);
        REQUIRE(model.ok());
        const InstanceModel& m = *model.value();
        for (std::size_t k = 0; k < m.subs.size(); ++k) {
            CHECK(m.var_qpM[k] == variety(m.qpM, m.subs[k]));
            CHECK(m.var_specM[k] == variety(m.specM, m.subs[k]));
        }
        for (std::size_t i = 0; i < m.ideals.size(); ++i) {
            CHECK(m.var_qpR[i] == variety(m.qpR, m.ideals[i], RingQpSemantics::radical));
            CHECK(m.var_qpR_cont[i] == variety(m.qpR, m.ideals[i], RingQpSemantics::containment));
            CHECK(m.var_specR[i] == variety(m.specR, m.ideals[i]));
        }
        for (std::size_t i = 0; i < m.ideals_bar.size(); ++i) {
            CHECK(m.var_qpRbar[i] == variety(m.qpRbar, m.ideals_bar[i], RingQpSemantics::radical));
            CHECK(m.var_qpRbar_cont[i] == variety(m.qpRbar, m.ideals_bar[i], RingQpSemantics::containment));
            CHECK(m.var_specRbar[i] == variety(m.specRbar, m.ideals_bar[i]));
        }
        // the closed family is exactly the deduplicated variety table
        for (std::size_t k = 0; k < m.subs.size(); ++k) CHECK(m.qpM_topo.is_closed(m.var_qpM[k]));
        for (const auto& c : m.qpM_topo.closed) {
            bool hit = false;
            for (std::size_t k = 0; k < m.subs.size() && !hit; ++k)
                if (m.var_qpM[k] == c) hit = true;
            CHECK(hit);
        }
    }
}

TEST_CASE("the model's spectra match the standalone constructors") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        auto model = build_model(d);
        REQUIRE(model.ok());
        const InstanceModel& m = *model.value();
        SpectrumOptions opt;
        opt.require_primeful = d.options.require_primeful;
        auto check_space = [&](const SpectrumSpace& got, SpaceKind kind, const GradedRing& ring,
                               const GradedModule* mod) {
            auto direct = build_spectrum(ring, mod, kind, opt);
            REQUIRE(direct.ok());
            REQUIRE(direct.value().count() == got.count());
            for (std::size_t i = 0; i < got.count(); ++i) {
                CHECK(direct.value().points[i] == got.points[i]);
                CHECK(direct.value().radicals[i] == got.radicals[i]);
            }
        };
        check_space(m.qpM, SpaceKind::qpspec_module, *m.R, m.M.get());
        check_space(m.specM, SpaceKind::spec_module, *m.R, m.M.get());
        check_space(m.qpR, SpaceKind::qpspec_ring, *m.R, nullptr);
        check_space(m.specR, SpaceKind::spec_ring, *m.R, nullptr);
        check_space(m.qpRbar, SpaceKind::qpspec_ring, m.quotient.ring, nullptr);
        check_space(m.specRbar, SpaceKind::spec_ring, m.quotient.ring, nullptr);

        // the precomputed-seed topology path agrees with the direct one
        FiniteTopology direct_topo = build_topology(m.qpM, m.subs, m.semantics());
        CHECK(direct_topo.closed == m.qpM_topo.closed);
        CHECK(direct_topo.basic == m.qpM_topo.basic);
        CHECK(direct_topo.basic_rep == m.qpM_topo.basic_rep);

        // and the basic-open memos agree with the direct computation
        for (Elem r : m.R->homogeneous_list()) {
            CHECK(m.gx_module(r) == basic_open(m.qpM, r));
            CHECK(m.gx_ring(r, RingQpSemantics::radical) == basic_open(m.qpR, r, RingQpSemantics::radical));
            CHECK(m.gx_ring(r, RingQpSemantics::containment) ==
                  basic_open(m.qpR, r, RingQpSemantics::containment));
        }
        for (Elem rb : m.quotient.ring.homogeneous_list())
            CHECK(m.gx_rbar(rb, m.semantics()) == basic_open(m.qpRbar, rb, m.semantics()));
    }
}

TEST_CASE("text reports carry the convention header and summary") {
    CheckReport rep = report_of("INST-D");
    std::string text = emit_report({rep}, ReportFormat::text);
    CHECK(text.find("# gzariski verify report") == 0);
    CHECK(text.find("I-bar is its image in R/Ann(M)") != std::string::npos);
    CHECK(text.find("instance INST-D") != std::string::npos);
    CHECK(text.find("summary:") != std::string::npos);
}
