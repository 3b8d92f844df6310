#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gzariski/checks.hpp"

namespace {

int input_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

bool slurp(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::string stem_of(const std::string& path) {
    std::filesystem::path p(path);
    return p.stem().string();
}

struct Overrides {
    std::string semantics;
    bool drop_primeful = false;
    std::uint32_t ring_cap = 0;
    std::size_t ideal_cap = 0;
    std::size_t submodule_cap = 0;

    void apply(gz::InstanceDesc& desc) const {
        if (semantics == "radical") desc.options.semantics = gz::RingQpSemantics::radical;
        else if (semantics == "containment") desc.options.semantics = gz::RingQpSemantics::containment;
        if (drop_primeful) desc.options.require_primeful = false;
        if (ring_cap) desc.options.ring_cap = ring_cap;
        if (ideal_cap) desc.options.ideal_cap = ideal_cap;
        if (submodule_cap) desc.options.submodule_cap = submodule_cap;
    }
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--semantics", ov.semantics, "ring qp-variety semantics (radical|containment)")
        ->check(CLI::IsMember({"radical", "containment"}));
    cmd->add_flag("--drop-primeful", ov.drop_primeful,
                  "drop the primeful requirement from qp-spectrum membership (sensitivity runs)");
    cmd->add_option("--ring-cap", ov.ring_cap, "carrier size cap");
    cmd->add_option("--ideal-cap", ov.ideal_cap, "graded ideal enumeration cap");
    cmd->add_option("--submodule-cap", ov.submodule_cap, "graded submodule enumeration cap");
}

int load_instance(const std::string& path, const Overrides& ov, gz::InstanceDesc& out) {
    std::string text;
    if (!slurp(path, text)) {
        input_error("cannot read " + path);
        return 2;
    }
    auto parsed = gz::parse_instance(text);
    if (!parsed.ok()) {
        input_error(path + ": " + parsed.defect().to_string());
        return 2;
    }
    out = std::move(parsed.value());
    if (out.name.empty()) out.name = stem_of(path);
    ov.apply(out);
    return 0;
}

gz::SpaceKind kind_of(const std::string& s) {
    if (s == "spec-ring") return gz::SpaceKind::spec_ring;
    if (s == "qp-ring") return gz::SpaceKind::qpspec_ring;
    if (s == "spec-module") return gz::SpaceKind::spec_module;
    return gz::SpaceKind::qpspec_module;
}

int cmd_validate(const std::string& path, const Overrides& ov) {
    gz::InstanceDesc desc;
    if (int rc = load_instance(path, ov, desc)) return rc;
    auto ring = gz::GradedRing::validate(desc.ring);
    if (!ring.ok()) return input_error(desc.name + ": " + ring.defect().to_string());
    std::unique_ptr<gz::GradedModule> mod;
    if (desc.module) {
        auto v = gz::GradedModule::validate(ring.value(), *desc.module);
        if (!v.ok()) return input_error(desc.name + ": " + v.defect().to_string());
        mod = std::make_unique<gz::GradedModule>(std::move(v.value()));
    } else {
        mod = std::make_unique<gz::GradedModule>(gz::GradedModule::regular(ring.value()));
    }
    std::cout << "ok: instance " << desc.name << " |G|=" << ring.value().group().order()
              << " |R|=" << ring.value().size() << " |M|=" << mod->size()
              << " homogeneous(R)=" << ring.value().homogeneous_list().size()
              << " homogeneous(M)=" << mod->homogeneous_list().size() << "\n";
    return 0;
}

int cmd_spectrum(const std::string& path, const std::string& kind_name, const Overrides& ov) {
    gz::InstanceDesc desc;
    if (int rc = load_instance(path, ov, desc)) return rc;
    auto model = gz::build_model(desc);
    if (!model.ok()) return input_error(desc.name + ": " + model.defect().to_string());
    const gz::InstanceModel& m = *model.value();
    gz::SpaceKind kind = kind_of(kind_name);
    const gz::SpectrumSpace& sp = kind == gz::SpaceKind::spec_ring    ? m.specR
                                  : kind == gz::SpaceKind::qpspec_ring ? m.qpR
                                  : kind == gz::SpaceKind::spec_module ? m.specM
                                                                        : m.qpM;
    std::cout << "spectrum " << gz::space_kind_name(kind) << " of " << desc.name << ": " << sp.count()
              << " point(s)\n";
    for (std::size_t i = 0; i < sp.count(); ++i) {
        std::cout << "  point " << i << " " << sp.point_print(static_cast<int>(i));
        if (sp.module)
            std::cout << " colon=" << gz::print_generators(*sp.ring, sp.colons[i]);
        std::cout << " radical=" << gz::print_generators(*sp.ring, sp.radicals[i]) << "\n";
    }
    return 0;
}

int cmd_topology(const std::string& path, const std::string& space_name, const Overrides& ov) {
    gz::InstanceDesc desc;
    if (int rc = load_instance(path, ov, desc)) return rc;
    auto model = gz::build_model(desc);
    if (!model.ok()) return input_error(desc.name + ": " + model.defect().to_string());
    const gz::InstanceModel& m = *model.value();
    gz::SpaceKind kind = kind_of(space_name);
    const gz::FiniteTopology& topo = kind == gz::SpaceKind::spec_ring    ? m.specR_topo
                                     : kind == gz::SpaceKind::qpspec_ring ? m.qpR_topo
                                     : kind == gz::SpaceKind::spec_module ? m.specM_topo
                                                                           : m.qpM_topo;
    const gz::SpectrumSpace& sp = *topo.space;
    std::cout << "topology " << gz::space_kind_name(kind) << " of " << desc.name << " (semantics="
              << gz::semantics_name(topo.semantics) << "): " << sp.count() << " point(s), " << topo.closed.size()
              << " closed set(s)\n";
    for (const auto& c : topo.closed) std::cout << "  closed " << sp.subset_print(c) << "\n";
    if (topo.axiom_issues.empty()) {
        std::cout << "axioms: ok\n";
    } else {
        for (const auto& issue : topo.axiom_issues)
            std::cout << "axiom violation: " << issue.what << " witness=" << issue.witness << "\n";
    }
    gz::TopologyProfile prof = gz::topology_profile(topo);
    std::cout << "profile: t0=" << prof.is_t0 << " t1=" << prof.is_t1 << " connected=" << prof.is_connected
              << " irreducible=" << prof.is_irreducible_space << " noetherian=" << prof.is_noetherian
              << " quasi-compact=" << prof.is_quasi_compact << " spectral=" << prof.is_spectral << "\n";
    for (const auto& comp : prof.irreducible_components)
        std::cout << "  component " << sp.subset_print(comp) << "\n";
    for (std::size_t i = 0; i < prof.irreducible_closed.size(); ++i) {
        std::cout << "  irreducible-closed " << sp.subset_print(prof.irreducible_closed[i]) << " generic=";
        if (prof.generic_point[i] < 0) std::cout << "none";
        else std::cout << sp.point_print(prof.generic_point[i]) << (prof.is_t0 ? " (unique: T0)" : "");
        std::cout << "\n";
    }
    for (std::size_t i = 0; i < topo.basic.size(); ++i)
        std::cout << "  basic-open r=" << sp.ring->print(topo.basic_rep[i]) << " "
                  << sp.subset_print(topo.basic[i]) << "\n";
    return 0;
}

int cmd_verify(const std::string& path, bool use_corpus, const std::string& checks_arg,
               const std::string& format, const std::string& out_path, unsigned jobs,
               const std::string& cache_dir, const Overrides& ov) {
    std::vector<std::string> selection;
    if (!checks_arg.empty()) {
        std::istringstream ss(checks_arg);
        std::string id;
        while (std::getline(ss, id, ',')) {
            if (id.empty()) continue;
            if (!gz::is_known_check_id(id)) return input_error("unknown check id: " + id);
            selection.push_back(id);
        }
    }

    std::vector<gz::InstanceDesc> descs;
    if (use_corpus) {
        descs = gz::builtin_corpus();
        for (auto& d : descs) ov.apply(d);
    } else {
        gz::InstanceDesc d;
        if (int rc = load_instance(path, ov, d)) return rc;
        descs.push_back(std::move(d));
    }

    std::vector<gz::Expected<gz::CheckReport>> results;
    results.reserve(descs.size());
    for (std::size_t i = 0; i < descs.size(); ++i) results.emplace_back(gz::CheckReport{});
    std::atomic<std::size_t> next{0};
    unsigned nthreads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(descs.size())));
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= descs.size()) break;
            try {
                results[i] = gz::run_check_suite_cached(descs[i], cache_dir);
            } catch (const std::exception& e) {
                results[i] = gz::Defect{gz::DefectKind::internal_error, e.what()};
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<gz::CheckReport> reports;
    for (std::size_t i = 0; i < descs.size(); ++i) {
        if (!results[i].ok()) return input_error(descs[i].name + ": " + results[i].defect().to_string());
        reports.push_back(std::move(results[i].value()));
    }

    std::string text =
        gz::emit_report(reports, format == "machine" ? gz::ReportFormat::machine : gz::ReportFormat::text, selection);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) return input_error("cannot write " + out_path);
        out << text;
    }
    return gz::report_exit_code(reports, selection);
}

int cmd_corpus(bool list, const std::string& dump_dir) {
    if (list || dump_dir.empty()) {
        for (const auto& d : gz::builtin_corpus()) {
            std::cout << d.name << ": |G|=" << d.ring.group.order;
            std::cout << " ring-components=";
            for (std::size_t g = 0; g < d.ring.components.size(); ++g) {
                if (g) std::cout << '|';
                for (std::size_t f = 0; f < d.ring.components[g].size(); ++f) {
                    if (f) std::cout << 'x';
                    std::cout << d.ring.components[g][f];
                }
            }
            std::cout << (d.module ? " module=explicit" : " module=regular") << "\n";
        }
        return 0;
    }
    std::error_code ec;
    std::filesystem::create_directories(dump_dir, ec);
    for (const auto& d : gz::builtin_corpus()) {
        std::string name = d.name;
        for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)) == '-' ? '_' : std::tolower(static_cast<unsigned char>(c)));
        std::filesystem::path p = std::filesystem::path(dump_dir) / (name + ".gz.txt");
        std::ofstream out(p, std::ios::trunc);
        if (!out) return input_error("cannot write " + p.string());
        out << gz::serialize_instance(d);
        std::cout << "wrote " << p.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite graded quasi-primary spectrum auditor"};
    app.require_subcommand(1);

    Overrides ov_validate, ov_spectrum, ov_topology, ov_verify;
    std::string file_validate, file_spectrum, file_topology, file_verify;
    std::string kind = "qp-module", space = "qp-module";
    std::string checks_arg, format = "text", out_path, cache_dir;
    unsigned jobs = 1;
    bool use_corpus = false, corpus_list = false;
    std::string dump_dir;

    auto* validate = app.add_subcommand("validate", "parse an instance file and verify all carrier axioms");
    validate->add_option("file", file_validate, "instance file")->required();
    add_override_flags(validate, ov_validate);

    auto* spectrum = app.add_subcommand("spectrum", "list the points of a spectrum");
    spectrum->add_option("file", file_spectrum, "instance file")->required();
    spectrum->add_option("--kind", kind, "spec-ring|qp-ring|spec-module|qp-module")
        ->check(CLI::IsMember({"spec-ring", "qp-ring", "spec-module", "qp-module"}));
    add_override_flags(spectrum, ov_spectrum);

    auto* topology = app.add_subcommand("topology", "materialize a spectrum topology and its profile");
    topology->add_option("file", file_topology, "instance file")->required();
    topology->add_option("--space", space, "spec-ring|qp-ring|spec-module|qp-module")
        ->check(CLI::IsMember({"spec-ring", "qp-ring", "spec-module", "qp-module"}));
    add_override_flags(topology, ov_topology);

    auto* verify = app.add_subcommand("verify", "run the identity check suite");
    verify->add_option("file", file_verify, "instance file");
    verify->add_flag("--corpus", use_corpus, "run the built-in corpus");
    verify->add_option("--checks", checks_arg, "comma-separated check ids");
    verify->add_option("--format", format, "text|machine")->check(CLI::IsMember({"text", "machine"}));
    verify->add_option("--out", out_path, "write the report to a file");
    verify->add_option("--jobs", jobs, "number of worker threads");
    verify->add_option("--cache-dir", cache_dir, "content-addressed spectra cache directory");
    add_override_flags(verify, ov_verify);

    auto* corpus = app.add_subcommand("corpus", "list or dump the built-in instances");
    corpus->add_flag("--list", corpus_list, "list instances");
    corpus->add_option("--dump", dump_dir, "write instance files into a directory");

    auto* checks = app.add_subcommand("checks", "list the check catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file_validate, ov_validate);
        if (spectrum->parsed()) return cmd_spectrum(file_spectrum, kind, ov_spectrum);
        if (topology->parsed()) return cmd_topology(file_topology, space, ov_topology);
        if (verify->parsed()) {
            if (!use_corpus && file_verify.empty()) return input_error("verify needs a file or --corpus");
            if (use_corpus && !file_verify.empty()) return input_error("verify takes a file or --corpus, not both");
            return cmd_verify(file_verify, use_corpus, checks_arg, format, out_path, jobs, cache_dir, ov_verify);
        }
        if (corpus->parsed()) return cmd_corpus(corpus_list, dump_dir);
        if (checks->parsed()) {
            for (const auto& def : gz::check_catalog()) {
                std::cout << def.id;
                for (std::size_t pad = std::string(def.id).size(); pad < 9; ++pad) std::cout << ' ';
                std::cout << def.title << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
