#include "justness/path.hpp"

#include "justness/syntax.hpp"

#include <algorithm>
#include <functional>

namespace justness {

std::vector<std::size_t> Lasso::suffix_positions(std::size_t a) const
{
    std::vector<std::size_t> out;
    std::size_t from = a < stem_.size() ? a : stem_.size();
    for (std::size_t i = from; i < size(); ++i) out.push_back(i);
    return out;
}

std::vector<Process> Lasso::suffix_states(std::size_t a) const
{
    std::vector<Process> out;
    for (std::size_t i : suffix_positions(a)) out.push_back(at(i).state);
    if (finite()) out.push_back(last_);
    return out;
}

Lasso Lasso::suffix(std::size_t a) const
{
    Lasso l;
    l.sem_ = sem_;
    l.last_ = last_;
    if (a < stem_.size()) {
        l.stem_.assign(stem_.begin() + static_cast<std::ptrdiff_t>(a), stem_.end());
        l.cycle_ = cycle_;
    } else if (!finite()) {
        std::size_t j = a - stem_.size();
        for (std::size_t k = 0; k < cycle_.size(); ++k) l.cycle_.push_back(cycle_[(j + k) % cycle_.size()]);
        l.last_ = l.cycle_.front().state;
    }
    return l;
}

std::string Lasso::str() const
{
    std::string s = print(first_state());
    for (const auto& st : stem_) s += " -" + st.step.label().str() + "-> " + print(st.step.target());
    if (!finite()) {
        s += " (";
        for (const auto& st : cycle_) s += " -" + st.step.label().str() + "-> " + print(st.step.target());
        s += " )^ω";
    }
    return s;
}

Lasso make_lasso(std::shared_ptr<const Semantics> sem, Process start, const std::vector<Derivation>& stem,
                 const std::vector<Derivation>& cycle)
{
    Lasso l;
    l.sem_ = sem;
    Process cur = start;
    auto push = [&](std::vector<Step>& into, Derivation d, std::size_t pos) {
        if (d.source() != cur)
            throw AdjacencyError("step " + std::to_string(pos) + " (" + d.str() + ") does not start in " + print(cur));
        if (d.passive()) throw IndicatorInPath("step " + std::to_string(pos) + " is an indicator: " + d.str());
        const auto& all = sem->derivations(cur);
        if (std::find(all.begin(), all.end(), d) == all.end())
            throw AdjacencyError("step " + std::to_string(pos) + " is not a derivation of " + print(cur) + ": " +
                                 d.str());
        into.push_back({cur, d});
        cur = d.target();
    };
    for (std::size_t i = 0; i < stem.size(); ++i) push(l.stem_, stem[i], i);
    l.last_ = cur;
    for (std::size_t i = 0; i < cycle.size(); ++i) push(l.cycle_, cycle[i], stem.size() + i);
    if (!cycle.empty() && cur != l.last_) throw AdjacencyError("cycle does not return to " + print(l.last_));
    return l;
}

Verdict is_progressing(const Lasso& pi, const LabelSet& b)
{
    pi.semantics().check_blocking_set(b);
    Verdict v;
    if (!pi.finite()) {
        v.holds = true;
        return v;
    }
    for (auto d : pi.semantics().derivations(pi.last_state())) {
        if (in_tr_bullet(d) && !b.count(d.label())) {
            v.holds = false;
            v.witness = Interference{pi.anchor_count() - 1, d, std::nullopt};
            v.reason = "final state enables " + d.str();
            return v;
        }
    }
    v.holds = true;
    return v;
}

std::vector<Interference> obligations(const Lasso& pi, ConcVariant v, bool sig)
{
    std::vector<Interference> out;
    for (std::size_t a = 0; a < pi.anchor_count(); ++a) {
        auto positions = pi.suffix_positions(a);
        for (auto t : pi.semantics().derivations(pi.anchor_state(a))) {
            if (!(sig ? in_tr_sbullet(t) : in_tr_bullet(t))) continue;
            Interference ob{a, t, std::nullopt};
            for (std::size_t p : positions)
                if (!conc(t, pi.at(p).step, v)) {
                    ob.by = p;
                    break;
                }
            out.push_back(ob);
        }
    }
    return out;
}

Verdict judge(const std::vector<Interference>& table, const LabelSet& b)
{
    Verdict v;
    v.holds = true;
    for (const auto& ob : table) {
        if (b.count(ob.t.label())) continue;
        v.obligations.push_back(ob);
        if (!ob.by && v.holds) {
            v.holds = false;
            v.witness = ob;
            v.reason = "at anchor " + std::to_string(ob.anchor) + ", " + ob.t.str() + " is never interfered with";
        }
    }
    return v;
}

Verdict is_just(const Lasso& pi, const LabelSet& b, ConcVariant v)
{
    pi.semantics().check_blocking_set(b);
    return judge(obligations(pi, v), b);
}

Verdict is_sigjust(const Lasso& pi, const LabelSet& b, ConcVariant v)
{
    pi.semantics().check_blocking_set(b, true);
    return judge(obligations(pi, v, true), b);
}

LabelSet minimal_blocking_set(const Lasso& pi, ConcVariant v)
{
    LabelSet out = pi.semantics().receptive();
    for (const auto& ob : obligations(pi, v))
        if (!ob.by) out.insert(ob.t.label());
    return out;
}

std::optional<ProcKind> shared_static_top(const Lasso& pi)
{
    auto states = pi.suffix_states(0);
    ProcKind k = states.front().kind();
    if (k != ProcKind::Par && k != ProcKind::Restrict && k != ProcKind::Relabel) return std::nullopt;
    for (auto s : states) {
        if (s.kind() != k) return std::nullopt;
        if (k == ProcKind::Restrict && s.names() != states.front().names()) return std::nullopt;
        if (k == ProcKind::Relabel && s.relabelling() != states.front().relabelling()) return std::nullopt;
    }
    return k;
}

Decomposition decompose(const Lasso& pi)
{
    auto top = shared_static_top(pi);
    if (!top) throw ShapeMismatch("states of the path do not share a leading static operator");
    Decomposition dec;
    dec.op = *top;
    Process s0 = pi.first_state();
    auto sem = pi.semantics_ptr();
    auto steps = [&](bool in_cycle) {
        std::vector<Step> v;
        for (std::size_t i = 0; i < pi.size(); ++i)
            if ((i >= pi.stem().size()) == in_cycle) v.push_back(pi.at(i));
        return v;
    };
    if (*top == ProcKind::Par) {
        std::vector<Derivation> ls, lc, rs, rc;
        auto split = [](const std::vector<Step>& v, std::vector<Derivation>& l, std::vector<Derivation>& r) {
            for (const auto& st : v) {
                Derivation d = st.step;
                switch (d.kind()) {
                case DerivKind::ParLeft: l.push_back(d.child()); break;
                case DerivKind::ParRight: r.push_back(d.right()); break;
                case DerivKind::ParBoth:
                    if (!d.child().passive()) l.push_back(d.child());
                    if (!d.right().passive()) r.push_back(d.right());
                    break;
                default: throw ShapeMismatch("step is not a parallel derivation: " + d.str());
                }
            }
        };
        split(steps(false), ls, rs);
        split(steps(true), lc, rc);
        dec.left = make_lasso(sem, s0.left(), ls, lc);
        dec.right = make_lasso(sem, s0.right(), rs, rc);
        return dec;
    }
    std::vector<Derivation> is, ic;
    for (const auto& st : steps(false)) is.push_back(st.step.child());
    for (const auto& st : steps(true)) ic.push_back(st.step.child());
    dec.inner = make_lasso(sem, s0.body(), is, ic);
    if (*top == ProcKind::Restrict) dec.names = s0.names();
    else dec.f = s0.relabelling();
    return dec;
}

AbstractLasso to_abstract(const Lasso& pi)
{
    AbstractLasso r;
    r.sem = pi.semantics_ptr();
    r.start = pi.first_state();
    for (const auto& s : pi.stem()) r.stem.push_back({s.step.source(), s.step.label(), s.step.target()});
    for (const auto& s : pi.cycle()) r.cycle.push_back({s.step.source(), s.step.label(), s.step.target()});
    return r;
}

namespace {

std::vector<Derivation> matching(const Semantics& sem, const Triple& tr)
{
    std::vector<Derivation> out;
    for (auto d : sem.derivations(tr.source))
        if (!d.passive() && d.label() == tr.label && d.target() == tr.target) out.push_back(d);
    return out;
}

} // namespace

AbstractLasso make_abstract(std::shared_ptr<const Semantics> sem, Process start, std::vector<Triple> stem,
                            std::vector<Triple> cycle)
{
    Process cur = start;
    std::size_t pos = 0;
    for (const auto* part : {&stem, &cycle}) {
        if (part == &cycle && !cycle.empty() && cycle.back().target != cycle.front().source)
            throw AdjacencyError("abstract cycle does not close");
        for (const auto& tr : *part) {
            if (tr.source != cur) throw AdjacencyError("triple " + std::to_string(pos) + " does not chain");
            if (matching(*sem, tr).empty())
                throw AdjacencyError("triple " + std::to_string(pos) + " is not a transition");
            cur = tr.target;
            ++pos;
        }
    }
    return AbstractLasso{std::move(sem), start, std::move(stem), std::move(cycle)};
}

Verdict abstract_is_just(const AbstractLasso& rho, const LabelSet& b, ConcVariant v)
{
    const Semantics& sem = *rho.sem;
    sem.check_blocking_set(b);
    std::vector<Triple> all = rho.stem;
    all.insert(all.end(), rho.cycle.begin(), rho.cycle.end());
    std::vector<std::vector<Derivation>> cands;
    for (const auto& tr : all) cands.push_back(matching(sem, tr));
    std::size_t n = rho.stem.size();
    std::size_t anchors = n + (rho.finite() ? 1 : rho.cycle.size());
    Process last = rho.finite() ? (all.empty() ? rho.start : all.back().target) : rho.cycle.front().source;
    Verdict verdict;
    verdict.holds = true;
    for (std::size_t a = 0; a < anchors; ++a) {
        Process s = a < all.size() ? all[a].source : last;
        std::size_t from = std::min(a, n);
        for (auto t : sem.derivations(s)) {
            if (!in_tr_bullet(t) || b.count(t.label())) continue;
            Interference ob{a, t, std::nullopt};
            for (std::size_t p = from; p < all.size() && !ob.by; ++p)
                for (auto u : cands[p])
                    if (!conc(t, u, v)) {
                        ob.by = p;
                        break;
                    }
            verdict.obligations.push_back(ob);
            if (!ob.by && verdict.holds) {
                verdict.holds = false;
                verdict.witness = ob;
                verdict.reason = "at anchor " + std::to_string(a) + ", " + t.str() + " is never interfered with";
            }
        }
    }
    return verdict;
}

std::optional<Lasso> concretize(const AbstractLasso& rho, const LabelSet& b, ConcVariant v, std::size_t limit)
{
    // A concrete witness may pick different derivations in successive
    // rounds of the cycle, so the cycle is also tried unrolled.
    std::size_t tried = 0;
    std::size_t max_unroll = 1;
    for (const auto& tr : rho.cycle) max_unroll = std::max(max_unroll, matching(*rho.sem, tr).size());
    max_unroll = std::min<std::size_t>(max_unroll, 6);
    for (std::size_t k = 1; k <= max_unroll; ++k) {
        std::vector<Triple> all = rho.stem;
        for (std::size_t i = 0; i < k; ++i) all.insert(all.end(), rho.cycle.begin(), rho.cycle.end());
        std::vector<std::vector<Derivation>> cands;
        for (const auto& tr : all) cands.push_back(matching(*rho.sem, tr));
        std::vector<Derivation> choice(all.size(), Derivation::discard_nil(Symbol::intern("_")));
        std::optional<Lasso> found;
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (found || tried >= limit) return;
            if (i == all.size()) {
                ++tried;
                auto mid = choice.begin() + static_cast<std::ptrdiff_t>(rho.stem.size());
                Lasso l = make_lasso(rho.sem, rho.start, {choice.begin(), mid}, {mid, choice.end()});
                if (is_just(l, b, v).holds) found = l;
                return;
            }
            for (auto d : cands[i]) {
                choice[i] = d;
                go(i + 1);
            }
        };
        go(0);
        if (found) return found;
    }
    return std::nullopt;
}

} // namespace justness
