#pragma once

// Command-line front end.  run() parses the arguments, dispatches to the
// library and returns the text it would print together with the exit code,
// so the binary and the tests share one code path.
//
// Exit codes: 0 when every check passed (reports such as indices and coset
// counts always pass), 1 when a verification failed, 2 on usage errors.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amalgam/chevlie.hpp"
#include "amalgam/fpgroup.hpp"
#include "amalgam/present.hpp"
#include "amalgam/verify.hpp"

namespace amalgam::cli {

using Json = nlohmann::ordered_json;

struct CommandResult {
    std::string command;
    Json config = Json::object();
    Json payload = Json::object();
    int exit_code = 0;
    std::string out;  // stdout text
    std::string err;  // stderr text
};

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::size_t max_cosets = kDefaultMaxCosets;
    std::string diagram, ring, field, out, rep, gens, type, subgroup, node;
    int bound = -1;
    std::size_t sample = 0;
    bool prune = false, kac_moody = false, sparse = false, table1 = false, local = false;
};

namespace detail {

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k];
    return s;
}

inline std::string root_string(const RootVec& v) { return root_to_string(v); }

inline FiniteRing finite_ring(const std::string& text) {
    auto r = parse_ring(text);
    if (auto* f = std::get_if<FiniteRing>(&r)) return *f;
    throw InfiniteRing(text + " is not finite");
}

inline std::size_t node_index(const CartanMatrix& a, const std::string& name) {
    if (auto k = a.index_of(name)) return *k;
    throw MalformedSpec("no node named " + name);
}

inline std::vector<std::size_t> node_list(const CartanMatrix& a, const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!amalgam::detail::trim(item).empty()) out.push_back(node_index(a, amalgam::detail::trim(item)));
    return out;
}

inline Json report_json(const CheckReport& r, bool all) {
    Json j{{"passed", r.passed}, {"failed", r.failed}, {"skipped", r.skipped}, {"failures", Json::array()}};
    for (const auto& c : r.results)
        if ((!c.pass && !c.skipped) || all)
            j["failures"].push_back({{"index", c.index}, {"batch", c.batch}, {"family", c.family}, {"detail", c.detail}});
    return j;
}

template <class Ring>
Presentation<Ring> sampled(Presentation<Ring> p, std::size_t sample, std::uint64_t seed) {
    if (sample == 0 || sample >= p.relators.size()) return p;
    std::vector<std::size_t> idx(p.relators.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::size_t> pick;
    std::sample(idx.begin(), idx.end(), std::back_inserter(pick), sample, std::mt19937_64(seed));
    std::vector<Relator<typename Ring::Elem>> rels;
    for (auto k : pick) rels.push_back(p.relators[k]);
    p.relators = std::move(rels);
    return p;
}

// ---------------------------------------------------------------------------

inline void present(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    auto r = finite_ring(o.ring);
    auto p = emit_presentation(a, r, {.prune = o.prune, .kac_moody = o.kac_moody, .sparse = o.sparse, .table1 = o.table1});
    std::string fmt = o.out.empty() ? (o.json ? "json" : "text") : o.out;
    res.payload = {{"generators", p.generators.size()}, {"relators", p.relators.size()}};
    if (fmt == "json") {
        res.out = to_json(p).dump(2) + "\n";
    } else if (fmt == "gap") {
        res.out = to_gap(p);
    } else if (fmt == "text") {
        std::ostringstream os;
        os << "generators " << p.generators.size() << ", relators " << p.relators.size() << "\n";
        for (const auto& rel : p.relators)
            os << rel.batch << " " << rel.family << ": " << word_to_string(a, r, rel.word) << "\n";
        res.out = os.str();
    } else {
        throw MalformedSpec("unknown output format " + fmt);
    }
}

template <class Ring>
void verify_with(const Options& o, const CartanMatrix& a, const Ring& r, CommandResult& res) {
    auto full = emit_presentation(a, r, {.prune = o.prune, .kac_moody = o.kac_moody, .sparse = o.sparse, .table1 = o.table1});
    auto p = sampled(full, o.sample, o.seed);
    std::vector<std::pair<std::string, CheckReport>> reports;
    if (o.local || !is_spherical(a)) {
        reports.emplace_back("local adjoint", check_presentation_local(p));
    } else {
        std::vector<std::string> kinds;
        if (o.rep.empty() || o.rep == "both") kinds = {"defining", "adjoint"};
        else if (o.rep == "defining" || o.rep == "adjoint") kinds = {o.rep};
        else throw MalformedSpec("unknown representation " + o.rep);
        for (const auto& kind : kinds) {
            if (kind == "defining" && o.rep.empty()) {
                try {
                    reports.emplace_back(kind, check_presentation(defining_rep(a), p));
                } catch (const NotSupported&) {
                }
                continue;
            }
            reports.emplace_back(kind, check_presentation(build_rep(a, kind), p));
        }
    }
    std::ostringstream os;
    os << "relators " << p.relators.size() << " of " << full.relators.size() << "\n";
    bool ok = true;
    std::size_t skipped = 0;
    res.payload = {{"relators", p.relators.size()}, {"emitted", full.relators.size()}, {"reports", Json::object()}};
    for (const auto& [kind, rep] : reports) {
        ok = ok && rep.ok();
        skipped += rep.skipped;
        os << kind << ": " << rep.passed << " passed, " << rep.failed << " failed, " << rep.skipped << " skipped\n";
        for (const auto& c : rep.results)
            if (!c.pass && !c.skipped) os << "  FAIL #" << c.index << " " << c.family << ": " << c.detail << "\n";
        res.payload["reports"][kind] = report_json(rep, false);
    }
    os << (!ok ? "verification FAILED" : skipped ? "all checked relators trivial" : "all relators trivial") << "\n";
    res.payload["ok"] = ok;
    res.out = os.str();
    res.exit_code = ok ? 0 : 1;
}

inline void verify(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    std::visit([&](const auto& r) { verify_with(o, a, r, res); }, parse_ring(o.ring));
}

inline void autos(const Options& o, CommandResult& res) {
    std::string t = o.type;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    EndoType type;
    if (t == "b2") type = EndoType::B2Char2;
    else if (t == "g2") type = EndoType::G2Char3;
    else throw MalformedSpec("--type must be b2 or g2");
    auto f = finite_ring(o.field);
    auto rep = check_endomorphism(type, f, o.rep.empty() ? "defining" : o.rep);
    std::ostringstream os;
    os << "relators " << rep.relators << ": " << rep.relators_hold << " hold, images " << rep.images_hold << " hold\n";
    os << "phi^2 = Frobenius on " << rep.generators << " generators: " << (rep.frobenius_ok ? "yes" : "no") << "\n";
    if (rep.inverse_ok) os << "psi phi^2 = id: " << (*rep.inverse_ok ? "yes" : "no") << "\n";
    for (const auto& f : rep.failures) os << "  FAIL " << f << "\n";
    os << (rep.ok() ? "endomorphism verified" : "endomorphism check FAILED") << "\n";
    res.payload = {{"relators", rep.relators}, {"relators_hold", rep.relators_hold}, {"images_hold", rep.images_hold},
                   {"frobenius_ok", rep.frobenius_ok}, {"failures", rep.failures}, {"ok", rep.ok()}};
    if (rep.inverse_ok) res.payload["inverse_ok"] = *rep.inverse_ok;
    res.out = os.str();
    res.exit_code = rep.ok() ? 0 : 1;
}

inline void wstar_check(const Options& o, CommandResult& res) {
    ChevalleyAlgebra g(parse_diagram(o.diagram));
    std::ostringstream os;
    bool ok = true;
    res.payload = {{"checks", Json::array()}};
    for (const auto& line : wstar_checks(g)) {
        ok = ok && line.pass;
        os << (line.pass ? "pass " : "FAIL ") << line.name;
        if (!line.detail.empty()) os << " [" << line.detail << "]";
        os << "\n";
        res.payload["checks"].push_back({{"name", line.name}, {"pass", line.pass}, {"detail", line.detail}});
    }
    res.payload["ok"] = ok;
    res.out = os.str();
    res.exit_code = ok ? 0 : 1;
}

inline void stabilizer(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    auto i = node_index(a, o.node);
    std::optional<ChevalleyAlgebra> g;
    if (is_spherical(a)) g.emplace(a);
    std::ostringstream os;
    bool ok = true;
    res.payload = {{"node", a.name(i)}, {"generators", Json::array()}};
    for (const auto& gen : stabilizer_generators(a, i)) {
        std::vector<std::size_t> plain;
        for (auto [k, e] : gen.word) plain.push_back(k);
        bool fixes_root = act(weyl_element_of_word(a, plain), simple_root(a.size(), i)) == simple_root(a.size(), i);
        Json j{{"kind", gen.kind}, {"word", word_to_string(a, gen.word)}, {"fixes_root", fixes_root}};
        os << gen.kind << " " << word_to_string(a, gen.word) << ": root " << (fixes_root ? "fixed" : "MOVED");
        ok = ok && fixes_root;
        if (g) {
            auto ei = g->root_basis(simple_root(a.size(), i));
            int expect = gen.kind == "square" ? (a(gen.word[0].first, i) % 2 ? -1 : 1) : 1;
            auto img = g->monomial_image(g->w_star_of_word(gen.word), ei);
            bool fixes = img == std::make_pair(ei, expect);
            ok = ok && fixes;
            j["e_i_coefficient"] = img.first == ei ? img.second : 0;
            os << ", e_i -> " << (img.first == ei ? std::to_string(img.second) : std::string("other")) << " e_i"
               << (fixes ? "" : " FAIL");
        }
        os << "\n";
        res.payload["generators"].push_back(j);
    }
    res.payload["ok"] = ok;
    res.out = os.str();
    res.exit_code = ok ? 0 : 1;
}

inline void roots(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    RootSet rs;
    if (o.bound >= 0) rs = enumerate_roots(a, o.bound);
    else if (is_spherical(a)) rs = finite_roots(a);
    else throw MalformedSpec("--bound is required for non-spherical diagrams");
    std::ostringstream os;
    os << rs.roots.size() << " roots" << (rs.complete ? " (complete)" : " (bounded)") << "\n";
    res.payload = {{"count", rs.roots.size()}, {"complete", rs.complete}, {"roots", Json::array()}};
    for (const auto& r : rs.roots) {
        bool pos = is_positive(r.root);
        os << (pos ? "+ " : "- ") << root_string(r.root) << " coroot " << root_string(r.coroot) << "\n";
        res.payload["roots"].push_back({{"root", r.root}, {"coroot", r.coroot}, {"positive", pos}});
    }
    res.out = os.str();
}

inline void enumerate(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    auto r = finite_ring(o.ring);
    auto p = emit_presentation(a, r, {.prune = o.prune, .kac_moody = o.kac_moody, .sparse = o.sparse});
    std::vector<Word<FiniteRing::Elem>> h;
    if (!o.subgroup.empty()) h = node_subgroup(p, node_list(a, o.subgroup));
    auto tc = todd_coxeter(p, h, o.max_cosets);
    std::ostringstream os;
    os << "generators " << p.generators.size() << ", relators " << p.relators.size() << "\n";
    if (tc.complete) os << (h.empty() ? "order " : "index ") << tc.index << "\n";
    else os << "capped at " << o.max_cosets << " cosets\n";
    os << "peak live cosets " << tc.live_peak << ", cosets defined " << tc.defined << "\n";
    res.payload = {{"complete", tc.complete}, {"index", tc.complete ? Json(tc.index) : Json(nullptr)},
                   {"live_peak", tc.live_peak}, {"defined", tc.defined}, {"relators", p.relators.size()}};
    res.out = os.str();
}

inline void unipotent_gen(const Options& o, CommandResult& res) {
    auto a = parse_diagram(o.diagram);
    auto f = finite_ring(o.field);
    auto roots = parse_root_list(a, o.gens.empty() ? "simple" : o.gens);
    auto g = unipotent_generation_index(a, f, roots);
    std::vector<std::string> names;
    for (const auto& v : roots) names.push_back(root_string(v));
    std::ostringstream os;
    os << "root groups " << join(names, " ") << "\n";
    os << "|U| = " << g.unipotent_order << ", |<S>| = " << g.subgroup_order << "\n";
    os << "index " << g.index() << "\n";
    os << "index of the image in U/[U,U] " << g.abelian_index() << "\n";
    res.payload = {{"roots", names}, {"unipotent_order", g.unipotent_order}, {"subgroup_order", g.subgroup_order},
                   {"index", g.index()}, {"abelian_index", g.abelian_index()}};
    res.out = os.str();
}

}  // namespace detail

inline CommandResult run(const std::vector<std::string>& args) {
    CommandResult res;
    Options o;
    CLI::App app{"Presentations of Kac-Moody groups by generators and relators", "amalgam"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--seed", o.seed, "seed for sampled checks");
    app.add_option("--max-cosets", o.max_cosets, "coset enumeration cap");

    auto diagram = [&](CLI::App* s) { s->add_option("--diagram", o.diagram, "diagram name or Cartan matrix")->required(); };
    auto emit_flags = [&](CLI::App* s) {
        s->add_flag("--prune", o.prune, "drop derivable Chevalley relators");
        s->add_flag("--kac-moody", o.kac_moody, "add the torus relators");
        s->add_flag("--sparse", o.sparse, "additivity over an additive generating set");
    };

    auto* present = app.add_subcommand("present", "emit a presentation");
    diagram(present);
    present->add_option("--ring", o.ring)->required();
    present->add_option("--out", o.out, "json, gap or text");
    present->add_flag("--table1", o.table1, "simply-laced 12-schema form");
    emit_flags(present);

    auto* verify = app.add_subcommand("verify", "evaluate relators in matrix representations");
    diagram(verify);
    verify->add_option("--ring", o.ring)->required();
    verify->add_option("--rep", o.rep, "defining, adjoint or both");
    verify->add_option("--sample", o.sample, "check only this many relators, chosen by --seed");
    verify->add_flag("--local", o.local, "use the adjoint representation of each relator's subdiagram");
    verify->add_flag("--table1", o.table1, "simply-laced 12-schema form");
    emit_flags(verify);

    auto* autos = app.add_subcommand("autos", "check the diagram endomorphisms of B2 and G2");
    autos->add_option("--type", o.type, "b2 or g2")->required();
    autos->add_option("--field", o.field)->required();
    autos->add_option("--rep", o.rep, "defining or adjoint");

    auto* wstar = app.add_subcommand("wstar-check", "identities of W* on the Chevalley basis");
    diagram(wstar);

    auto* stab = app.add_subcommand("stabilizer", "stabilizer generators of a simple root vector");
    diagram(stab);
    stab->add_option("--node", o.node)->required();

    auto* roots = app.add_subcommand("roots", "real roots up to a depth bound");
    diagram(roots);
    roots->add_option("--bound", o.bound, "depth bound");

    auto* enumerate = app.add_subcommand("enumerate", "Todd-Coxeter order of a presented group");
    diagram(enumerate);
    enumerate->add_option("--ring", o.ring)->required();
    enumerate->add_option("--subgroup", o.subgroup, "nodes whose generators span the subgroup");
    emit_flags(enumerate);

    auto* unip = app.add_subcommand("unipotent-gen", "index of root groups in the positive unipotent group");
    diagram(unip);
    unip->add_option("--field", o.field)->required();
    unip->add_option("--gens", o.gens, "root list, e.g. s,l,s'");

    for (auto* s : app.get_subcommands({})) s->fallthrough();

    std::vector<const char*> argv{"amalgam"};
    for (const auto& a : args) argv.push_back(a.c_str());
    res.command = detail::join(args, " ");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::CallForAllHelp&) {
        res.out = app.help("", CLI::AppFormatMode::All);
        return res;
    } catch (const CLI::ParseError& e) {
        res.err = std::string(e.what()) + "\n";
        res.exit_code = 2;
        return res;
    }

    auto* sub = app.get_subcommands().front();
    res.config = {{"subcommand", sub->get_name()}};
    for (auto [k, v] : {std::pair{"diagram", &o.diagram}, {"ring", &o.ring}, {"field", &o.field}, {"type", &o.type},
                        {"gens", &o.gens}, {"node", &o.node}, {"rep", &o.rep}, {"subgroup", &o.subgroup}})
        if (!v->empty()) res.config[k] = *v;
    for (auto [k, v] : {std::pair{"prune", o.prune}, {"kac_moody", o.kac_moody}, {"sparse", o.sparse},
                        {"table1", o.table1}, {"local", o.local}})
        if (v) res.config[k] = true;
    if (o.sample) res.config["sample"] = o.sample, res.config["seed"] = o.seed;
    if (sub == enumerate) res.config["max_cosets"] = o.max_cosets;
    if (sub == roots && o.bound >= 0) res.config["bound"] = o.bound;

    try {
        if (sub == present) detail::present(o, res);
        else if (sub == verify) detail::verify(o, res);
        else if (sub == autos) detail::autos(o, res);
        else if (sub == wstar) detail::wstar_check(o, res);
        else if (sub == stab) detail::stabilizer(o, res);
        else if (sub == roots) detail::roots(o, res);
        else if (sub == enumerate) detail::enumerate(o, res);
        else detail::unipotent_gen(o, res);
    } catch (const Error& e) {
        res.err = std::string(e.what()) + "\n";
        res.exit_code = 2;
        res.out.clear();
        return res;
    }
    // present always prints the document itself.
    if (o.json && sub != present) {
        Json doc{{"command", res.command}, {"config", res.config}, {"result", res.payload}, {"exit_code", res.exit_code}};
        res.out = doc.dump(2) + "\n";
    }
    return res;
}

}  // namespace amalgam::cli
