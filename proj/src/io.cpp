#include "justness/io.hpp"

#include "justness/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace justness {

namespace {

std::string squash(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

Process parse_state(const std::string& text, const Ltsc& lts)
{
    const Semantics& sem = lts.semantics();
    return parse_process(text, sem.calculus(), sem.env());
}

} // namespace

Json to_json(const Ltsc& lts)
{
    Json j;
    j["dialect"] = std::string(to_string(lts.calculus()));
    j["initial"] = 0;
    j["states"] = Json::array();
    for (std::size_t i = 0; i < lts.states().size(); ++i)
        j["states"].push_back({{"id", i}, {"term", print(lts.states()[i])}});
    j["derivations"] = Json::array();
    for (std::size_t i = 0; i < lts.derivations().size(); ++i) {
        Derivation d = lts.derivations()[i];
        Json syn = Json::array();
        for (const auto& s : d.synchrons()) syn.push_back(s.str());
        j["derivations"].push_back({{"id", i},
                                    {"source", lts.source_index(i)},
                                    {"target", lts.target_index(i)},
                                    {"label", d.label().str()},
                                    {"class", std::string(to_string(lts.semantics().classify(d)))},
                                    {"name", d.str()},
                                    {"synchrons", syn}});
    }
    return j;
}

std::string to_dot(const Ltsc& lts)
{
    std::ostringstream o;
    o << "digraph ltsc {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < lts.states().size(); ++i)
        o << "  s" << i << " [label=\"" << dot_escape(print(lts.states()[i])) << "\"" << (i == 0 ? ", penwidth=2" : "")
          << "];\n";
    for (std::size_t i = 0; i < lts.derivations().size(); ++i) {
        Derivation d = lts.derivations()[i];
        o << "  s" << lts.source_index(i) << " -> s" << lts.target_index(i) << " [label=\"" << dot_escape(d.label().str())
          << "\"" << (d.passive() ? ", style=dashed" : "") << "];\n";
    }
    o << "}\n";
    return o.str();
}

std::vector<std::vector<int>> conc_matrix(const Ltsc& lts, ConcVariant v)
{
    const auto& ds = lts.derivations();
    std::vector<std::vector<int>> m(ds.size(), std::vector<int>(ds.size(), -1));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        bool domain = v == ConcVariant::GH ? in_tr_bullet(ds[i]) : in_tr_sbullet(ds[i]);
        if (!domain) continue;
        for (std::size_t k = 0; k < ds.size(); ++k) m[i][k] = conc(ds[i], ds[k], v) ? 1 : 0;
    }
    return m;
}

std::string matrix_csv(const std::vector<std::vector<int>>& m)
{
    std::ostringstream o;
    o << "t";
    for (std::size_t k = 0; k < m.size(); ++k) o << "," << k;
    o << "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        o << i;
        for (int x : m[i]) o << "," << (x < 0 ? std::string() : std::to_string(x));
        o << "\n";
    }
    return o.str();
}

Json matrix_json(const Ltsc& lts, const std::vector<std::vector<int>>& m, ConcVariant v)
{
    Json j;
    j["variant"] = std::string(to_string(v));
    j["derivations"] = Json::array();
    for (std::size_t i = 0; i < lts.derivations().size(); ++i)
        j["derivations"].push_back({{"id", i}, {"label", lts.derivations()[i].label().str()}, {"name", lts.derivations()[i].str()}});
    j["matrix"] = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (int x : row) r.push_back(x < 0 ? Json(nullptr) : Json(x == 1));
        j["matrix"].push_back(r);
    }
    return j;
}

namespace {

Derivation resolve_step(const Json& step, Process cur, const Ltsc& lts, std::size_t pos)
{
    const Semantics& sem = lts.semantics();
    auto here = [&](const std::string& what) { return "step " + std::to_string(pos) + ": " + what; };
    if (step.is_number_integer()) {
        auto i = step.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= lts.derivations().size()) throw AdjacencyError(here("index out of range"));
        return lts.derivations()[static_cast<std::size_t>(i)];
    }
    std::optional<Label> label;
    std::optional<Process> target;
    std::string name;
    if (step.is_string()) {
        name = step.get<std::string>();
    } else if (step.is_object()) {
        label = parse_label(step.at("label").get<std::string>(), sem.signal_universe());
        if (step.contains("target")) target = parse_state(step.at("target").get<std::string>(), lts);
    } else {
        throw AdjacencyError(here("expected an index, a string or an object"));
    }
    std::vector<Derivation> hits;
    const auto& all = sem.derivations(cur);
    if (!name.empty()) {
        for (auto d : all)
            if (squash(d.str()) == squash(name)) return d;
        try {
            label = parse_label(name, sem.signal_universe());
        } catch (const Error&) {
            throw AdjacencyError(here("no derivation of " + print(cur) + " is named " + name));
        }
    }
    for (auto d : all)
        if (!d.passive() && d.label() == *label && (!target || d.target() == *target)) hits.push_back(d);
    if (hits.size() == 1) return hits.front();
    if (hits.empty()) throw AdjacencyError(here(print(cur) + " has no " + label->str() + " transition"));
    throw AdjacencyError(here(std::to_string(hits.size()) + " derivations of " + print(cur) + " match " + label->str() +
                              "; name one"));
}

} // namespace

Lasso lasso_from_json(const Json& j, const Ltsc& lts)
{
    Process start = j.contains("start") ? parse_state(j.at("start").get<std::string>(), lts) : lts.initial();
    Process cur = start;
    std::vector<Derivation> stem, cycle;
    std::size_t pos = 0;
    for (const char* part : {"stem", "cycle"}) {
        if (!j.contains(part)) continue;
        for (const auto& s : j.at(part)) {
            Derivation d = resolve_step(s, cur, lts, pos++);
            (std::string(part) == "stem" ? stem : cycle).push_back(d);
            cur = d.target();
        }
    }
    return make_lasso(lts.semantics_ptr(), start, stem, cycle);
}

AbstractLasso abstract_lasso_from_json(const Json& j, const Ltsc& lts)
{
    const Semantics& sem = lts.semantics();
    Process start = j.contains("start") ? parse_state(j.at("start").get<std::string>(), lts) : lts.initial();
    Process cur = start;
    std::vector<Triple> stem, cycle;
    std::size_t pos = 0;
    for (const char* part : {"stem", "cycle"}) {
        if (!j.contains(part)) continue;
        for (const auto& s : j.at(part)) {
            Triple tr;
            if (s.is_object() && s.contains("source")) {
                tr = {parse_state(s.at("source").get<std::string>(), lts),
                      parse_label(s.at("label").get<std::string>(), sem.signal_universe()),
                      parse_state(s.at("target").get<std::string>(), lts)};
            } else {
                Derivation d = resolve_step(s, cur, lts, pos);
                tr = {d.source(), d.label(), d.target()};
            }
            ++pos;
            (std::string(part) == "stem" ? stem : cycle).push_back(tr);
            cur = tr.target;
        }
    }
    return make_abstract(lts.semantics_ptr(), start, stem, cycle);
}

Json to_json(const Lasso& pi)
{
    Json j;
    j["start"] = print(pi.first_state());
    j["stem"] = Json::array();
    j["cycle"] = Json::array();
    for (const auto& s : pi.stem()) j["stem"].push_back(s.step.str());
    for (const auto& s : pi.cycle()) j["cycle"].push_back(s.step.str());
    j["labels"] = Json::array();
    for (std::size_t p = 0; p < pi.size(); ++p) j["labels"].push_back(pi.at(p).step.label().str());
    return j;
}

Json to_json(const Verdict& v)
{
    Json j;
    j["holds"] = v.holds;
    if (!v.reason.empty()) j["reason"] = v.reason;
    auto ob = [](const Interference& i) {
        Json o{{"anchor", i.anchor}, {"derivation", i.t.str()}, {"label", i.t.label().str()}};
        o["interfered_at"] = i.by ? Json(*i.by) : Json(nullptr);
        return o;
    };
    j["witness"] = v.witness ? ob(*v.witness) : Json(nullptr);
    j["obligations"] = Json::array();
    for (const auto& i : v.obligations) j["obligations"].push_back(ob(i));
    return j;
}

TaskFamily tasks_from_json(const Json& j, const Ltsc& lts)
{
    TaskFamily f;
    for (const auto& [name, list] : j.items()) {
        f.names.push_back(name);
        f.tasks.emplace_back();
        for (const auto& x : list) {
            auto i = x.get<long long>();
            if (i < 0 || static_cast<std::size_t>(i) >= lts.derivations().size())
                throw Error("task " + name + ": derivation index " + std::to_string(i) + " out of range");
            f.tasks.back().push_back(lts.derivations()[static_cast<std::size_t>(i)]);
        }
    }
    check_tasks(f, lts);
    return f;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

} // namespace justness
