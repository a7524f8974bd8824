#include "justness/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace justness {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_agent_name(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

class Parser {
public:
    Parser(std::string_view text, const AgentEnv* env, std::size_t base = 0)
        : s_(text), env_(env), base_(base) {}

    Process parse_all()
    {
        Process p = sum();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

    const std::set<Symbol>& signalled() const { return signalled_; }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + i_); }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c)
    {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++i_;
        return true;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_ident()
    {
        skip();
        return i_ < s_.size() && ident_start(s_[i_]);
    }
    std::string ident()
    {
        skip();
        if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected identifier");
        std::size_t b = i_;
        while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }
    std::string lower_ident(const char* what)
    {
        std::size_t at = i_;
        auto id = ident();
        if (is_agent_name(id)) {
            i_ = at;
            skip();
            fail(std::string("expected ") + what + ", got agent identifier " + id);
        }
        return id;
    }

    Process sum()
    {
        Process p = par();
        while (accept('+')) p = Process::sum(p, par());
        return p;
    }

    Process par()
    {
        Process p = post();
        while (accept('|')) p = Process::par(p, post());
        return p;
    }

    Process post()
    {
        Process p = pre();
        for (;;) {
            if (accept('\\')) {
                p = Process::restrict(name_set(), p);
            } else if (accept('[')) {
                p = Process::relabel(relabelling(), p);
            } else if (accept('^')) {
                auto s = Symbol::intern(lower_ident("signal name"));
                signalled_.insert(s);
                p = Process::signalled(p, s);
            } else {
                return p;
            }
        }
    }

    NameSet name_set()
    {
        std::vector<Symbol> names;
        if (!accept('{')) {
            names.push_back(Symbol::intern(lower_ident("restricted name")));
            return NameSet(std::move(names));
        }
        if (accept('}')) return NameSet{};
        do names.push_back(Symbol::intern(lower_ident("restricted name")));
        while (accept(','));
        expect('}');
        return NameSet(std::move(names));
    }

    Relabelling relabelling()
    {
        if (accept(']')) return Relabelling{};
        std::size_t at = i_;
        auto first = lower_ident("relabelling");
        if (accept(']')) {
            const Relabelling* f = env_ ? env_->relabelling(Symbol::intern(first)) : nullptr;
            if (!f) {
                i_ = at;
                skip();
                fail("unknown relabelling " + first);
            }
            return *f;
        }
        std::vector<std::pair<Symbol, Symbol>> pairs;
        auto from = first;
        for (;;) {
            expect('-');
            expect('>');
            auto to = lower_ident("relabelling target");
            pairs.emplace_back(Symbol::intern(from), Symbol::intern(to));
            if (accept(']')) break;
            expect(',');
            from = lower_ident("relabelling source");
        }
        try {
            return Relabelling(std::move(pairs));
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    // action '.' pre | action | atom
    Process pre()
    {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (c == '\'' || (ident_start(c) && !std::isupper(static_cast<unsigned char>(c)))) {
            Label a = action();
            if (accept('.')) return Process::prefix(a, pre());
            return Process::prefix(a, Process::nil());
        }
        return atom();
    }

    Label action()
    {
        if (accept('\'')) return Label::cochan(Symbol::intern(lower_ident("co-name")));
        auto id = lower_ident("action");
        if (id == "tau") return Label::tau();
        auto n = Symbol::intern(id);
        if (i_ < s_.size() && s_[i_] == '!') {
            ++i_;
            return Label::bcast(n);
        }
        if (i_ < s_.size() && s_[i_] == '?') {
            ++i_;
            return Label::receive(n);
        }
        return Label::chan(n);
    }

    Process atom()
    {
        skip();
        char c = s_[i_];
        if (c == '0') {
            ++i_;
            if (i_ < s_.size() && ident_char(s_[i_])) fail("malformed nil");
            return Process::nil();
        }
        if (c == '(') {
            ++i_;
            Process p = sum();
            expect(')');
            return p;
        }
        if (ident_start(c)) return Process::agent(Symbol::intern(ident()));
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const AgentEnv* env_;
    std::size_t base_;
    std::size_t i_ = 0;
    std::set<Symbol> signalled_;
};

/// Rewrites reads of signal names into signal labels.
Process resolve(Process p, const std::set<Symbol>& signals)
{
    if (signals.empty()) return p;
    switch (p.kind()) {
    case ProcKind::Nil:
    case ProcKind::Agent: return p;
    case ProcKind::Prefix: {
        Label a = p.action();
        if (signals.count(a.name)) {
            if (a.kind == LabelKind::CoName)
                throw DialectError("co-name '" + a.name.str() + " of a signal; emissions arise only from ^" +
                                   a.name.str());
            if (a.kind == LabelKind::Name) a.kind = LabelKind::Signal;
        }
        return Process::prefix(a, resolve(p.body(), signals));
    }
    case ProcKind::Sum: return Process::sum(resolve(p.left(), signals), resolve(p.right(), signals));
    case ProcKind::Par: return Process::par(resolve(p.left(), signals), resolve(p.right(), signals));
    case ProcKind::Restrict: return Process::restrict(p.names(), resolve(p.body(), signals));
    case ProcKind::Relabel: return Process::relabel(p.relabelling(), resolve(p.body(), signals));
    case ProcKind::Signalled: return Process::signalled(resolve(p.body(), signals), p.signal());
    }
    return p;
}

std::string strip_comment(const std::string& line)
{
    auto h = line.find('#');
    std::string s = h == std::string::npos ? line : line.substr(0, h);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// ---- printing ---------------------------------------------------------------

enum Prec { kSum = 0, kPar = 1, kPost = 2, kPre = 3 };

int prec(Process p)
{
    switch (p.kind()) {
    case ProcKind::Sum: return kSum;
    case ProcKind::Par: return kPar;
    case ProcKind::Restrict:
    case ProcKind::Relabel:
    case ProcKind::Signalled: return kPost;
    case ProcKind::Prefix: return kPre;
    default: return kPre + 1;
    }
}

void print_into(std::string& out, Process p, int ctx)
{
    bool paren = prec(p) < ctx;
    if (paren) out += '(';
    switch (p.kind()) {
    case ProcKind::Nil: out += '0'; break;
    case ProcKind::Agent: out += p.ident().str(); break;
    case ProcKind::Prefix:
        out += p.action().str();
        if (p.body().kind() != ProcKind::Nil) {
            out += '.';
            print_into(out, p.body(), kPre);
        }
        break;
    case ProcKind::Sum:
        print_into(out, p.left(), kSum);
        out += " + ";
        print_into(out, p.right(), kPar);
        break;
    case ProcKind::Par:
        print_into(out, p.left(), kPar);
        out += " | ";
        print_into(out, p.right(), kPost);
        break;
    case ProcKind::Restrict:
        print_into(out, p.body(), kPost);
        out += "\\" + p.names().str();
        break;
    case ProcKind::Relabel:
        print_into(out, p.body(), kPost);
        out += p.relabelling().str();
        break;
    case ProcKind::Signalled:
        print_into(out, p.body(), kPost);
        out += "^" + p.signal().str();
        break;
    }
    if (paren) out += ')';
}

} // namespace

Process parse_process(std::string_view text, Calculus calc)
{
    static const AgentEnv empty;
    return parse_process(text, calc, empty);
}

Process parse_process(std::string_view text, Calculus calc, const AgentEnv& env)
{
    Parser parser(text, &env);
    Process raw = parser.parse_all();
    std::set<Symbol> signals;
    if (has_signals(calc)) {
        signals = env.signals();
        signals.insert(parser.signalled().begin(), parser.signalled().end());
    }
    Process p = resolve(raw, signals);
    check_dialect(p, calc);
    return p;
}

System parse_system(std::string_view text, Calculus calc)
{
    System sys;
    sys.calc = calc;
    struct Pending {
        std::string lhs;
        std::string rhs;
        std::size_t offset;
    };
    std::vector<Pending> agents;
    std::optional<Pending> init;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t line_offset = offset;
        offset += line.size() + 1;
        std::string s = strip_comment(line);
        if (s.empty()) continue;
        auto def = s.find(":=");
        if (def == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'name := ...'", line_offset);
        auto lhs = strip_comment(s.substr(0, def));
        auto rhs = strip_comment(s.substr(def + 2));
        std::size_t rhs_offset = line_offset + line.find(":=") + 2;
        if (lhs == "dialect") {
            auto c = calculus_from_string(rhs);
            if (!c) throw ParseError("unknown dialect '" + rhs + "'", rhs_offset);
            sys.calc = *c;
        } else if (lhs == "init") {
            init = Pending{lhs, rhs, rhs_offset};
        } else if (is_agent_name(lhs)) {
            agents.push_back({lhs, rhs, rhs_offset});
        } else if (!rhs.empty() && rhs.front() == '[') {
            std::string wrapped = "0" + rhs;
            Parser p(wrapped, nullptr, rhs_offset - 1);
            Process q = p.parse_all();
            if (q.kind() != ProcKind::Relabel) throw ParseError("malformed relabelling", rhs_offset);
            sys.env->define_relabelling(Symbol::intern(lhs), q.relabelling());
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": '" + lhs +
                                 "' is neither an agent (capitalised) nor a relabelling",
                             line_offset);
        }
    }

    std::vector<std::pair<Symbol, Process>> raw;
    std::set<Symbol> signals;
    auto parse_raw = [&](const Pending& d) {
        Parser p(d.rhs, sys.env.get(), d.offset);
        Process q = p.parse_all();
        signals.insert(p.signalled().begin(), p.signalled().end());
        return q;
    };
    for (const auto& d : agents) raw.emplace_back(Symbol::intern(d.lhs), parse_raw(d));
    std::optional<Process> raw_init;
    if (init) raw_init = parse_raw(*init);

    if (!has_signals(sys.calc)) signals.clear();
    sys.env->add_signals(signals);
    for (auto& [a, body] : raw) {
        Process q = resolve(body, signals);
        check_dialect(q, sys.calc);
        sys.env->define(a, q);
    }
    check_guarded(*sys.env);
    if (raw_init) {
        sys.init = resolve(*raw_init, signals);
        check_dialect(*sys.init, sys.calc);
        check_defined(*sys.env, *sys.init);
    }
    return sys;
}

System load_system(const std::string& path, Calculus calc)
{
    std::ifstream f(path);
    if (!f) throw Error("cannot read " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_system(buf.str(), calc);
}

std::string print(Process p)
{
    std::string out;
    print_into(out, p, kSum);
    return out;
}

} // namespace justness
