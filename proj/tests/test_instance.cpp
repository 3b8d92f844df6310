#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gzariski/checks.hpp"

using namespace gz;

namespace {

InstanceDesc parse_ok(const std::string& text) {
    auto d = parse_instance(text);
    if (!d.ok()) {
        CAPTURE(d.defect().to_string());
        REQUIRE(d.ok());
    }
    return std::move(d.value());
}

Defect parse_err(const std::string& text) {
    auto d = parse_instance(text);
    REQUIRE(!d.ok());
    return d.defect();
}

} // namespace

TEST_CASE("the canonical serialization of every corpus instance reparses") {
    for (const auto& d : builtin_corpus()) {
        CAPTURE(d.name);
        std::string text = serialize_instance(d);
        InstanceDesc back = parse_ok(text);
        CHECK(back.name == d.name);
        CHECK(back.ring.group.order == d.ring.group.order);
        CHECK(back.ring.components == d.ring.components);
        CHECK(back.module.has_value() == d.module.has_value());
        CHECK(serialize_instance(back) == text);
        auto model = build_model(back);
        CHECK(model.ok());
    }
}

TEST_CASE("parsing is tolerant of comments, blank lines and orientation") {
    std::string text =
        "# a parity-graded example\n"
        "[group]\n"
        "order = 2\n"
        "identity = 0\n"
        "table = 0 1 / 1 0\n"
        "\n"
        "[ring]\n"
        "component 0 = 2\n"
        "component 1 = 2\n"
        "mul 1 0 (1)(1) = (1)   # adjacent tuples, reversed orientation\n"
        "mul 0 0 (1) (1) = (1)\n"
        "one = 0:(1)\n";
    InstanceDesc d = parse_ok(text);
    CHECK(d.ring.group.order == 2);
    CHECK(!d.module.has_value());
    // canonicalization is a fixpoint
    std::string canon = serialize_instance(d);
    CHECK(serialize_instance(parse_ok(canon)) == canon);
    // and matches the built-in instance up to the name
    InstanceDesc named = d;
    named.name = "INST-A";
    CHECK(serialize_instance(named) == serialize_instance(*find_instance("INST-A")));
}

TEST_CASE("an empty file is a syntax error at line 1") {
    Defect d = parse_err("");
    CHECK(d.kind == DefectKind::syntax_error);
    CHECK(d.line == 1);
    Defect only_comments = parse_err("# nothing here\n\n");
    CHECK(only_comments.kind == DefectKind::syntax_error);
    CHECK(only_comments.line == 1);
}

TEST_CASE("out-of-range residues are semantic errors with a position") {
    std::string text =
        "[group]\n"
        "order = 1\n"
        "identity = 0\n"
        "table = 0\n"
        "[ring]\n"
        "component 0 = 2\n"
        "mul 0 0 (1)(1) = (3)\n"
        "one = 0:(1)\n";
    Defect d = parse_err(text);
    CHECK(d.kind == DefectKind::semantic_error);
    CHECK(d.line == 7);
    CHECK(d.detail == "residue out of range");
}

TEST_CASE("duplicate sections are rejected") {
    std::string text =
        "[group]\n"
        "order = 1\n"
        "identity = 0\n"
        "table = 0\n"
        "[ring]\n"
        "component 0 = 2\n"
        "one = 0:(1)\n"
        "[ring]\n";
    Defect d = parse_err(text);
    CHECK(d.kind == DefectKind::duplicate_section);
    CHECK(d.line == 8);
}

TEST_CASE("undeclared components and malformed directives are diagnosed") {
    std::string base =
        "[group]\n"
        "order = 1\n"
        "identity = 0\n"
        "table = 0\n"
        "[ring]\n";
    Defect undeclared = parse_err(base + "component 5 = 2\none = 0:(1)\n");
    CHECK(undeclared.kind == DefectKind::semantic_error);
    Defect twice = parse_err(base + "component 0 = 2\ncomponent 0 = 2\none = 0:(1)\n");
    CHECK(twice.kind == DefectKind::semantic_error);
    Defect missing_one = parse_err(base + "component 0 = 2\n");
    CHECK(missing_one.kind == DefectKind::semantic_error);
    Defect junk = parse_err(base + "component 0 = 2\nfrobnicate = 1\n");
    CHECK(junk.kind == DefectKind::syntax_error);
    Defect non_unit = parse_err(base + "component 0 = 4\nmul 0 0 (2) (1) = (1)\none = 0:(1)\n");
    CHECK(non_unit.kind == DefectKind::semantic_error);
}

TEST_CASE("options override semantics, caps and the primeful switch") {
    std::string text =
        "[group]\n"
        "order = 1\n"
        "identity = 0\n"
        "table = 0\n"
        "[ring]\n"
        "component 0 = 2\n"
        "mul 0 0 (1) (1) = (1)\n"
        "one = 0:(1)\n"
        "[options]\n"
        "name = probe-one\n"
        "semantics = containment\n"
        "require_primeful = false\n"
        "ideal_cap = 128\n";
    InstanceDesc d = parse_ok(text);
    CHECK(d.name == "probe-one");
    CHECK(d.options.semantics == RingQpSemantics::containment);
    CHECK(!d.options.require_primeful);
    CHECK(d.options.ideal_cap == 128);
}

TEST_CASE("content hashes track semantics and the primeful switch") {
    InstanceDesc a = *find_instance("INST-A");
    std::string h0 = instance_content_hash(a);
    InstanceDesc b = a;
    b.options.semantics = RingQpSemantics::containment;
    CHECK(instance_content_hash(b) != h0);
    InstanceDesc c = a;
    c.options.require_primeful = false;
    CHECK(instance_content_hash(c) != h0);
    CHECK(instance_content_hash(*find_instance("INST-A")) == h0);
}

TEST_CASE("the shipped sample instance files parse and validate") {
    const char* dir = std::getenv("GZ_INSTANCES");
    REQUIRE(dir != nullptr);
    auto slurp = [&](const char* name) {
        std::ifstream in(std::string(dir) + "/" + name);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    InstanceDesc a = parse_ok(slurp("inst_a.txt"));
    CHECK(serialize_instance(a) == serialize_instance(*find_instance("INST-A")));
    InstanceDesc sample = parse_ok(slurp("sample_module.txt"));
    CHECK(sample.module.has_value());
    CHECK(build_model(sample).ok());
}
