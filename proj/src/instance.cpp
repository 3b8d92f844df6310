#include "gzariski/instance.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace gz {
namespace {

struct Tok {
    enum Kind { number, word, sym, end } kind = end;
    std::string text;
    long long value = 0;
    int col = 0;
};

struct LineLexer {
    std::string_view s;
    int line;
    std::size_t pos = 0;

    Tok peeked;
    bool has_peek = false;

    Tok next() {
        if (has_peek) {
            has_peek = false;
            return peeked;
        }
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        Tok t;
        t.col = static_cast<int>(pos) + 1;
        if (pos >= s.size()) {
            t.kind = Tok::end;
            return t;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos + 1])))) {
            std::size_t start = pos;
            if (c == '-') ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            t.kind = Tok::number;
            t.text = std::string(s.substr(start, pos - start));
            t.value = std::stoll(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                                      s[pos] == '-' || s[pos] == '.'))
                ++pos;
            t.kind = Tok::word;
            t.text = std::string(s.substr(start, pos - start));
            return t;
        }
        t.kind = Tok::sym;
        t.text = std::string(1, c);
        ++pos;
        return t;
    }
    Tok peek() {
        if (!has_peek) {
            peeked = next();
            has_peek = true;
        }
        return peeked;
    }
};

struct Parser {
    std::string_view text;
    std::optional<Defect> error;

    void syntax(int line, int col, const std::string& expected) {
        if (!error) error = Defect{DefectKind::syntax_error, "expected " + expected, line, col};
    }
    void semantic(int line, int col, const std::string& what) {
        if (!error) error = Defect{DefectKind::semantic_error, what, line, col};
    }
};

bool expect_sym(Parser& p, LineLexer& lx, const char* sym) {
    Tok t = lx.next();
    if (t.kind != Tok::sym || t.text != sym) {
        p.syntax(lx.line, t.col, std::string("'") + sym + "'");
        return false;
    }
    return true;
}

bool expect_int(Parser& p, LineLexer& lx, long long& out, const char* what) {
    Tok t = lx.next();
    if (t.kind != Tok::number) {
        p.syntax(lx.line, t.col, what);
        return false;
    }
    out = t.value;
    return true;
}

bool expect_eol(Parser& p, LineLexer& lx) {
    Tok t = lx.next();
    if (t.kind != Tok::end) {
        p.syntax(lx.line, t.col, "end of line");
        return false;
    }
    return true;
}

// "(a,b,...)" -> vector of ints; also records the opening column.
bool parse_tuple(Parser& p, LineLexer& lx, std::vector<int>& out, int& open_col) {
    Tok t = lx.next();
    if (t.kind != Tok::sym || t.text != "(") {
        p.syntax(lx.line, t.col, "'('");
        return false;
    }
    open_col = t.col;
    out.clear();
    if (lx.peek().kind == Tok::sym && lx.peek().text == ")") {
        lx.next();
        return true;
    }
    while (true) {
        long long v;
        if (!expect_int(p, lx, v, "residue")) return false;
        out.push_back(static_cast<int>(v));
        Tok s = lx.next();
        if (s.kind == Tok::sym && s.text == ")") return true;
        if (!(s.kind == Tok::sym && s.text == ",")) {
            p.syntax(lx.line, s.col, "',' or ')'");
            return false;
        }
    }
}

struct RawConst {
    int line;
    int g, h;
    std::vector<int> a, b, image;
    int a_col, b_col, image_col;
};

// The generator selector must be a unit tuple; returns the factor index.
int unit_index(Parser& p, int line, int col, const std::vector<int>& t) {
    int idx = -1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        if (t[i] != 1 || idx >= 0) {
            p.semantic(line, col, "generator tuple must select a single cyclic generator");
            return -1;
        }
        idx = static_cast<int>(i);
    }
    if (idx < 0) p.semantic(line, col, "generator tuple must be nonzero");
    return idx;
}

} // namespace

Expected<InstanceDesc> parse_instance(std::string_view text) {
    Parser p{text, std::nullopt};
    InstanceDesc desc;

    enum Section { none, group, ring, module, options };
    Section cur = none;
    bool seen[5] = {false, false, false, false, false};
    int section_line[5] = {0, 0, 0, 0, 0};

    bool have_order = false, have_identity = false, have_table = false;
    bool have_one = false;
    std::map<int, int> ring_comp_lines, module_comp_lines;
    std::vector<RawConst> ring_consts, module_consts;
    int one_line = 0, one_comp = 0, one_col = 0;
    std::vector<int> one_tuple;
    ModuleDesc module_desc;
    bool any_line = false;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size() && !p.error) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        bool blank = raw.find_first_not_of(" \t\r") == std::string_view::npos;
        if (blank) {
            if (pos > text.size()) break;
            continue;
        }
        any_line = true;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        LineLexer lx{raw, line_no, 0, {}, false};
        Tok first = lx.next();

        if (first.kind == Tok::sym && first.text == "[") {
            Tok name = lx.next();
            if (name.kind != Tok::word) {
                p.syntax(line_no, name.col, "section name");
                break;
            }
            if (!expect_sym(p, lx, "]") || !expect_eol(p, lx)) break;
            Section s;
            if (name.text == "group") s = group;
            else if (name.text == "ring") s = ring;
            else if (name.text == "module") s = module;
            else if (name.text == "options") s = options;
            else {
                p.syntax(line_no, name.col, "one of [group] [ring] [module] [options]");
                break;
            }
            if (seen[s]) {
                p.error = Defect{DefectKind::duplicate_section, "[" + name.text + "] given twice", line_no, first.col};
                break;
            }
            seen[s] = true;
            section_line[s] = line_no;
            cur = s;
            continue;
        }

        if (cur == none) {
            p.syntax(line_no, first.col, "'[group]' section before content");
            break;
        }
        if (first.kind != Tok::word) {
            p.syntax(line_no, first.col, "directive");
            break;
        }
        const std::string& key = first.text;

        if (cur == group) {
            if (key == "order") {
                long long v;
                if (!expect_sym(p, lx, "=") || !expect_int(p, lx, v, "group order") || !expect_eol(p, lx)) break;
                if (v <= 0) {
                    p.semantic(line_no, first.col, "group order must be positive");
                    break;
                }
                desc.ring.group.order = static_cast<int>(v);
                have_order = true;
            } else if (key == "identity") {
                long long v;
                if (!expect_sym(p, lx, "=") || !expect_int(p, lx, v, "identity index") || !expect_eol(p, lx)) break;
                desc.ring.group.identity = static_cast<int>(v);
                have_identity = true;
            } else if (key == "table") {
                if (!expect_sym(p, lx, "=")) break;
                std::vector<std::vector<int>> rows(1);
                while (true) {
                    Tok t = lx.next();
                    if (t.kind == Tok::end) break;
                    if (t.kind == Tok::number) rows.back().push_back(static_cast<int>(t.value));
                    else if (t.kind == Tok::sym && t.text == "/") rows.emplace_back();
                    else {
                        p.syntax(line_no, t.col, "element index or '/'");
                        break;
                    }
                }
                if (p.error) break;
                desc.ring.group.table = std::move(rows);
                have_table = true;
            } else {
                p.syntax(line_no, first.col, "'order', 'identity' or 'table'");
                break;
            }
            continue;
        }

        if (cur == ring || cur == module) {
            auto& comp_lines = cur == ring ? ring_comp_lines : module_comp_lines;
            auto& comps = cur == ring ? desc.ring.components : module_desc.components;
            if (key == "component") {
                long long g;
                if (!expect_int(p, lx, g, "component index") || !expect_sym(p, lx, "=")) break;
                std::vector<int> factors;
                while (true) {
                    long long d;
                    Tok t = lx.next();
                    if (t.kind != Tok::number) {
                        p.syntax(line_no, t.col, "cyclic order");
                        break;
                    }
                    d = t.value;
                    if (d < 1) {
                        p.semantic(line_no, t.col, "cyclic order must be >= 1");
                        break;
                    }
                    factors.push_back(static_cast<int>(d));
                    Tok sep = lx.next();
                    if (sep.kind == Tok::end) break;
                    if (!(sep.kind == Tok::word && sep.text == "x")) {
                        p.syntax(line_no, sep.col, "'x' or end of line");
                        break;
                    }
                }
                if (p.error) break;
                if (!have_order || g < 0 || g >= desc.ring.group.order) {
                    p.semantic(line_no, first.col, "undeclared component index " + std::to_string(g));
                    break;
                }
                if (comp_lines.count(static_cast<int>(g))) {
                    p.semantic(line_no, first.col, "component " + std::to_string(g) + " declared twice");
                    break;
                }
                comp_lines[static_cast<int>(g)] = line_no;
                if (comps.size() < static_cast<std::size_t>(desc.ring.group.order))
                    comps.resize(static_cast<std::size_t>(desc.ring.group.order));
                comps[static_cast<std::size_t>(g)] = std::move(factors);
            } else if ((cur == ring && key == "mul") || (cur == module && key == "act")) {
                RawConst rc;
                rc.line = line_no;
                long long g, h;
                if (!expect_int(p, lx, g, "component index") || !expect_int(p, lx, h, "component index")) break;
                rc.g = static_cast<int>(g);
                rc.h = static_cast<int>(h);
                if (!parse_tuple(p, lx, rc.a, rc.a_col)) break;
                if (!parse_tuple(p, lx, rc.b, rc.b_col)) break;
                if (!expect_sym(p, lx, "=")) break;
                if (!parse_tuple(p, lx, rc.image, rc.image_col)) break;
                if (!expect_eol(p, lx)) break;
                (cur == ring ? ring_consts : module_consts).push_back(std::move(rc));
            } else if (cur == ring && key == "one") {
                long long g;
                if (!expect_sym(p, lx, "=") || !expect_int(p, lx, g, "component index") || !expect_sym(p, lx, ":"))
                    break;
                int col;
                if (!parse_tuple(p, lx, one_tuple, col) || !expect_eol(p, lx)) break;
                if (have_one) {
                    p.semantic(line_no, first.col, "unity declared twice");
                    break;
                }
                have_one = true;
                one_line = line_no;
                one_comp = static_cast<int>(g);
                one_col = col;
            } else {
                p.syntax(line_no, first.col, cur == ring ? "'component', 'mul' or 'one'" : "'component' or 'act'");
                break;
            }
            continue;
        }

        // [options]
        Tok eq = lx.next();
        if (!(eq.kind == Tok::sym && eq.text == "=")) {
            p.syntax(line_no, eq.col, "'='");
            break;
        }
        if (key == "name") {
            Tok v = lx.next();
            if (v.kind != Tok::word && v.kind != Tok::number) {
                p.syntax(line_no, v.col, "instance name");
                break;
            }
            desc.name = v.text;
            if (!expect_eol(p, lx)) break;
        } else if (key == "semantics") {
            Tok v = lx.next();
            if (v.kind == Tok::word && v.text == "radical") desc.options.semantics = RingQpSemantics::radical;
            else if (v.kind == Tok::word && v.text == "containment") desc.options.semantics = RingQpSemantics::containment;
            else {
                p.syntax(line_no, v.col, "'radical' or 'containment'");
                break;
            }
            if (!expect_eol(p, lx)) break;
        } else if (key == "require_primeful") {
            Tok v = lx.next();
            if (v.kind == Tok::word && v.text == "true") desc.options.require_primeful = true;
            else if (v.kind == Tok::word && v.text == "false") desc.options.require_primeful = false;
            else {
                p.syntax(line_no, v.col, "'true' or 'false'");
                break;
            }
            if (!expect_eol(p, lx)) break;
        } else if (key == "ring_cap" || key == "group_cap" || key == "ideal_cap" || key == "submodule_cap") {
            long long v;
            if (!expect_int(p, lx, v, "cap value") || !expect_eol(p, lx)) break;
            if (v <= 0) {
                p.semantic(line_no, first.col, "cap must be positive");
                break;
            }
            if (key == "ring_cap") desc.options.ring_cap = static_cast<std::uint32_t>(v);
            else if (key == "group_cap") desc.options.group_cap = static_cast<int>(v);
            else if (key == "ideal_cap") desc.options.ideal_cap = static_cast<std::size_t>(v);
            else desc.options.submodule_cap = static_cast<std::size_t>(v);
        } else {
            p.syntax(line_no, first.col, "'name', 'semantics', 'require_primeful' or a cap key");
            break;
        }
    }

    if (!p.error && !any_line) p.error = Defect{DefectKind::syntax_error, "expected [group] section", 1, 1};
    if (!p.error && !seen[group]) p.error = Defect{DefectKind::syntax_error, "missing [group] section", 1, 1};
    if (!p.error && !seen[ring]) p.error = Defect{DefectKind::syntax_error, "missing [ring] section", 1, 1};
    if (!p.error && (!have_order || !have_identity || !have_table))
        p.error = Defect{DefectKind::semantic_error, "[group] needs order, identity and table", section_line[group], 1};

    // Second pass over the stored constants, now that components are known.
    auto resolve = [&](const std::vector<RawConst>& consts, bool is_ring) {
        const auto& gcomps = desc.ring.components;
        const auto& hcomps = is_ring ? desc.ring.components : module_desc.components;
        for (const auto& rc : consts) {
            if (p.error) return;
            if (rc.g < 0 || rc.g >= desc.ring.group.order ||
                static_cast<std::size_t>(rc.g) >= gcomps.size() || gcomps[static_cast<std::size_t>(rc.g)].empty()) {
                p.semantic(rc.line, 1, "undeclared component " + std::to_string(rc.g));
                return;
            }
            if (rc.h < 0 || rc.h >= desc.ring.group.order ||
                static_cast<std::size_t>(rc.h) >= hcomps.size() || hcomps[static_cast<std::size_t>(rc.h)].empty()) {
                p.semantic(rc.line, 1, "undeclared component " + std::to_string(rc.h));
                return;
            }
            const auto& fg = gcomps[static_cast<std::size_t>(rc.g)];
            const auto& fh = hcomps[static_cast<std::size_t>(rc.h)];
            if (rc.a.size() != fg.size()) {
                p.semantic(rc.line, rc.a_col, "generator tuple arity mismatch");
                return;
            }
            if (rc.b.size() != fh.size()) {
                p.semantic(rc.line, rc.b_col, "generator tuple arity mismatch");
                return;
            }
            int i = unit_index(p, rc.line, rc.a_col, rc.a);
            int j = unit_index(p, rc.line, rc.b_col, rc.b);
            if (p.error) return;
            int gh = desc.ring.group.table[static_cast<std::size_t>(rc.g)][static_cast<std::size_t>(rc.h)];
            const auto& fgh = hcomps[static_cast<std::size_t>(gh)];
            if (rc.image.size() != fgh.size()) {
                p.semantic(rc.line, rc.image_col, "image tuple arity does not match component " + std::to_string(gh));
                return;
            }
            for (std::size_t t = 0; t < rc.image.size(); ++t)
                if (rc.image[t] < 0 || rc.image[t] >= fgh[t]) {
                    p.semantic(rc.line, rc.image_col, "residue out of range");
                    return;
                }
            if (is_ring) {
                MulEntry e;
                e.g = rc.g;
                e.h = rc.h;
                e.i = i;
                e.j = j;
                e.image = rc.image;
                desc.ring.mul.push_back(std::move(e));
            } else {
                ActEntry e;
                e.g = rc.g;
                e.h = rc.h;
                e.i = i;
                e.j = j;
                e.image = rc.image;
                module_desc.act.push_back(std::move(e));
            }
        }
    };

    if (!p.error && seen[ring]) {
        for (int g = 0; g < desc.ring.group.order && !p.error; ++g)
            if (static_cast<std::size_t>(g) >= desc.ring.components.size() ||
                desc.ring.components[static_cast<std::size_t>(g)].empty())
                p.semantic(section_line[ring], 1, "[ring] missing component " + std::to_string(g));
    }
    if (!p.error) resolve(ring_consts, true);
    if (!p.error && seen[ring] && !have_one)
        p.semantic(section_line[ring], 1, "[ring] missing unity");
    if (!p.error && have_one) {
        if (one_comp < 0 || one_comp >= desc.ring.group.order) {
            p.semantic(one_line, 1, "undeclared component " + std::to_string(one_comp));
        } else {
            const auto& fe = desc.ring.components[static_cast<std::size_t>(one_comp)];
            if (one_tuple.size() != fe.size()) p.semantic(one_line, one_col, "unity tuple arity mismatch");
            else
                for (std::size_t t = 0; t < one_tuple.size(); ++t)
                    if (one_tuple[t] < 0 || one_tuple[t] >= fe[t]) {
                        p.semantic(one_line, one_col, "residue out of range");
                        break;
                    }
            desc.ring.one_component = one_comp;
            desc.ring.one_tuple = one_tuple;
        }
    }
    if (!p.error && seen[module]) {
        for (int g = 0; g < desc.ring.group.order && !p.error; ++g)
            if (static_cast<std::size_t>(g) >= module_desc.components.size() ||
                module_desc.components[static_cast<std::size_t>(g)].empty())
                p.semantic(section_line[module], 1, "[module] missing component " + std::to_string(g));
        if (!p.error) resolve(module_consts, false);
        if (!p.error) desc.module = std::move(module_desc);
    }

    if (p.error) return *p.error;

    desc.ring.caps.max_ring_size = desc.options.ring_cap;
    desc.ring.caps.max_group_order = desc.options.group_cap;
    if (desc.module) desc.module->max_module_size = desc.options.ring_cap;
    for (char& c : desc.name)
        if (std::isspace(static_cast<unsigned char>(c))) c = '_';
    return desc;
}

namespace {

std::string tuple_str(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(t[i]);
    }
    s += ')';
    return s;
}

std::string unit_tuple_str(std::size_t arity, int idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < arity; ++i) {
        if (i) s += ',';
        s += (static_cast<int>(i) == idx) ? '1' : '0';
    }
    s += ')';
    return s;
}

bool tuple_nonzero(const std::vector<int>& t) {
    for (int v : t)
        if (v) return true;
    return false;
}

} // namespace

std::string serialize_instance(const InstanceDesc& desc) {
    std::ostringstream out;
    const auto& g = desc.ring.group;
    out << "[group]\n";
    out << "order = " << g.order << "\n";
    out << "identity = " << g.identity << "\n";
    out << "table =";
    for (int r = 0; r < g.order; ++r) {
        if (r) out << " /";
        for (int c = 0; c < g.order; ++c) out << ' ' << g.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    out << "\n";

    auto emit_components = [&](const std::vector<std::vector<int>>& comps) {
        for (std::size_t gi = 0; gi < comps.size(); ++gi) {
            out << "component " << gi << " =";
            for (std::size_t f = 0; f < comps[gi].size(); ++f) {
                if (f) out << " x";
                out << ' ' << comps[gi][f];
            }
            out << "\n";
        }
    };

    out << "[ring]\n";
    emit_components(desc.ring.components);
    {
        // Normalize to the canonical orientation (g<h, or g==h with i<=j).
        std::map<std::tuple<int, int, int, int>, std::vector<int>> entries;
        for (const auto& e : desc.ring.mul) {
            int eg = e.g, eh = e.h, ei = e.i, ej = e.j;
            if (eg > eh || (eg == eh && ei > ej)) {
                std::swap(eg, eh);
                std::swap(ei, ej);
            }
            entries.emplace(std::make_tuple(eg, eh, ei, ej), e.image);
        }
        for (const auto& [key, image] : entries) {
            if (!tuple_nonzero(image)) continue;
            auto [eg, eh, ei, ej] = key;
            out << "mul " << eg << ' ' << eh << ' '
                << unit_tuple_str(desc.ring.components[static_cast<std::size_t>(eg)].size(), ei) << ' '
                << unit_tuple_str(desc.ring.components[static_cast<std::size_t>(eh)].size(), ej) << " = "
                << tuple_str(image) << "\n";
        }
    }
    out << "one = " << desc.ring.one_component << ':' << tuple_str(desc.ring.one_tuple) << "\n";

    if (desc.module) {
        out << "[module]\n";
        emit_components(desc.module->components);
        std::map<std::tuple<int, int, int, int>, std::vector<int>> entries;
        for (const auto& e : desc.module->act)
            entries.emplace(std::make_tuple(e.g, e.h, e.i, e.j), e.image);
        for (const auto& [key, image] : entries) {
            if (!tuple_nonzero(image)) continue;
            auto [eg, eh, ei, ej] = key;
            out << "act " << eg << ' ' << eh << ' '
                << unit_tuple_str(desc.ring.components[static_cast<std::size_t>(eg)].size(), ei) << ' '
                << unit_tuple_str(desc.module->components[static_cast<std::size_t>(eh)].size(), ej) << " = "
                << tuple_str(image) << "\n";
        }
    }

    const InstanceOptions defaults;
    std::ostringstream opt;
    if (!desc.name.empty()) opt << "name = " << desc.name << "\n";
    if (desc.options.semantics != defaults.semantics)
        opt << "semantics = " << semantics_name(desc.options.semantics) << "\n";
    if (desc.options.require_primeful != defaults.require_primeful)
        opt << "require_primeful = " << (desc.options.require_primeful ? "true" : "false") << "\n";
    if (desc.options.ring_cap != defaults.ring_cap) opt << "ring_cap = " << desc.options.ring_cap << "\n";
    if (desc.options.group_cap != defaults.group_cap) opt << "group_cap = " << desc.options.group_cap << "\n";
    if (desc.options.ideal_cap != defaults.ideal_cap) opt << "ideal_cap = " << desc.options.ideal_cap << "\n";
    if (desc.options.submodule_cap != defaults.submodule_cap)
        opt << "submodule_cap = " << desc.options.submodule_cap << "\n";
    std::string opts = opt.str();
    if (!opts.empty()) out << "[options]\n" << opts;
    return out.str();
}

std::string instance_content_hash(const InstanceDesc& desc) {
    std::string payload = serialize_instance(desc);
    payload += '\x1f';
    payload += semantics_name(desc.options.semantics);
    payload += desc.options.require_primeful ? "+primeful" : "-primeful";
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace gz
