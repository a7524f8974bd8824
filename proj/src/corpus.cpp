#include "justness/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>

namespace justness {

std::string corpus_dir()
{
    if (const char* e = std::getenv("JUSTNESS_CORPUS"); e && *e) return e;
#ifdef JUSTNESS_CORPUS_DIR
    return JUSTNESS_CORPUS_DIR;
#else
    return "corpus";
#endif
}

std::vector<CorpusEntry> named_examples(const std::string& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator(dir))
        if (f.path().extension() == ".sys") files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::vector<CorpusEntry> out;
    for (const auto& f : files) {
        System s = load_system(f.string(), Calculus::CCS);
        if (!s.init) throw Error(f.string() + ": no init line");
        out.push_back({f.stem().string(), s.calc, s.env, *s.init});
    }
    return out;
}

CorpusEntry named_example(const std::string& name, const std::string& dir)
{
    auto path = std::filesystem::path(dir) / (name + ".sys");
    System s = load_system(path.string(), Calculus::CCS);
    if (!s.init) throw Error(path.string() + ": no init line");
    return {name, s.calc, s.env, *s.init};
}

namespace {

class Generator {
public:
    Generator(std::uint64_t seed, Calculus calc) : rng_(seed), calc_(calc) {}

    std::string system()
    {
        std::string text = "dialect := " + std::string(to_string(calc_)) + "\n";
        std::size_t agents = pick(0, 2);
        for (std::size_t i = 0; i < agents; ++i) names_.push_back(std::string(1, static_cast<char>('A' + i)));
        // no parallel composition under recursion: keeps every state small
        for (const auto& n : names_)
            text += n + " := " + action() + "." + term(2, true, false) + " + " + term(2, false, false) + "\n";
        std::string init;
        std::size_t parts = pick(1, 3);
        for (std::size_t i = 0; i < parts; ++i) {
            std::string c = !names_.empty() && pick(0, 2) == 0 ? names_[pick(0, names_.size() - 1)]
                                                              : action() + "." + term(3, true, true);
            init += (i ? " | " : "") + std::string("(") + c + ")";
        }
        if (parts > 1 && pick(0, 2) == 0) init = "(" + init + ")\\{a}";
        return text + "init := " + init + "\n";
    }

private:
    std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    std::string action()
    {
        std::vector<std::string> acts{"tau", "a", "'a", "c", "'c"};
        if (has_broadcast(calc_)) {
            acts.push_back("b!");
            acts.push_back("b?");
        }
        if (has_signals(calc_)) acts.push_back("s");
        return acts[pick(0, acts.size() - 1)];
    }

    std::string leaf(bool guarded)
    {
        if (guarded && !names_.empty() && pick(0, 2) != 0) return names_[pick(0, names_.size() - 1)];
        return "0";
    }

    std::string term(int depth, bool guarded, bool par)
    {
        if (depth == 0) return leaf(guarded);
        std::size_t ops = has_signals(calc_) ? 9 : 8;
        switch (pick(0, ops)) {
        case 0: return leaf(guarded);
        case 1:
        case 2:
        case 3: return action() + "." + term(depth - 1, true, par);
        case 4: return "(" + term(depth - 1, guarded, par) + " + " + term(depth - 1, guarded, par) + ")";
        case 5:
            if (!par) return action() + "." + term(depth - 1, true, par);
            return "(" + term(depth - 1, guarded, par) + " | " + term(depth - 1, guarded, par) + ")";
        case 6: return "(" + term(depth - 1, guarded, par) + ")\\{a}";
        case 7: return "(" + term(depth - 1, guarded, par) + ")[a->c]";
        case 8: return action() + "." + term(depth - 1, true, par);
        default: return "(" + term(depth - 1, guarded, par) + ")^s";
        }
    }

    std::mt19937_64 rng_;
    Calculus calc_;
    std::vector<std::string> names_;
};

} // namespace

std::vector<CorpusEntry> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_states)
{
    const Calculus calcs[] = {Calculus::CCS, Calculus::ABC, Calculus::ABCd, Calculus::CCSS_PRED, Calculus::CCSS_ENC};
    std::vector<CorpusEntry> out;
    std::mt19937_64 master(seed);
    std::size_t attempt = 0;
    while (out.size() < count) {
        Calculus calc = calcs[out.size() % 5];
        Generator g(master(), calc);
        std::string text = g.system();
        ++attempt;
        try {
            System s = parse_system(text, calc);
            CorpusEntry e{"random-" + std::to_string(out.size()), s.calc, s.env, *s.init};
            Ltsc lts = explore(e, max_states);
            if (lts.states().size() < 2) continue;
            out.push_back(std::move(e));
        } catch (const Error&) {
            // unbounded or ill-formed; draw again
        }
    }
    return out;
}

std::vector<CorpusEntry> full_corpus(std::uint64_t seed, std::size_t random_count)
{
    auto out = named_examples();
    auto r = random_corpus(seed, random_count);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::shared_ptr<const Semantics> semantics_for(const CorpusEntry& e)
{
    return std::make_shared<Semantics>(e.calc, e.env, std::vector<Process>{e.init});
}

Ltsc explore(const CorpusEntry& e, std::size_t bound) { return Ltsc(semantics_for(e), e.init, bound); }

std::vector<Lasso> simple_lassos(const Ltsc& lts, std::size_t max_stem, std::size_t max_cycle)
{
    auto sem = lts.semantics_ptr();
    std::vector<Lasso> out;
    std::vector<std::size_t> states{0};
    std::vector<Derivation> steps;
    std::function<void()> go = [&]() {
        std::size_t len = steps.size();
        if (len <= max_stem) out.push_back(make_lasso(sem, lts.initial(), steps));
        for (std::size_t di : lts.outgoing(states.back())) {
            Derivation d = lts.derivations()[di];
            if (d.passive()) continue;
            std::size_t tgt = lts.target_index(di);
            auto it = std::find(states.begin(), states.end(), tgt);
            if (it != states.end()) {
                std::size_t k = static_cast<std::size_t>(it - states.begin());
                if (k <= max_stem && len - k + 1 <= max_cycle) {
                    std::vector<Derivation> stem(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(k));
                    std::vector<Derivation> cyc(steps.begin() + static_cast<std::ptrdiff_t>(k), steps.end());
                    cyc.push_back(d);
                    out.push_back(make_lasso(sem, lts.initial(), stem, cyc));
                }
                continue;
            }
            if (len + 1 >= max_stem + max_cycle) continue;
            states.push_back(tgt);
            steps.push_back(d);
            go();
            steps.pop_back();
            states.pop_back();
        }
    };
    go();
    return out;
}

std::vector<LabelSet> blocking_sets(const LabelSet& base, const LabelSet& labels)
{
    std::vector<Label> pool;
    for (const auto& l : labels)
        if (!base.count(l)) pool.push_back(l);
    std::vector<LabelSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
        LabelSet s = base;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) s.insert(pool[i]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace justness
