#include "shirew/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace shirew {

namespace {

struct Token {
    enum Kind { Ident, QVar, LParen, RParen, Comma, Pipe, Turnstile, Dot, End } kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(tok_.line, tok_.col, msg); }

    Token expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k) fail("expected " + what);
        return take();
    }

  private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {  // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        auto single = [&](Token::Kind k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
        };
        switch (c) {
            case '(':
                single(Token::LParen);
                return;
            case ')':
                single(Token::RParen);
                return;
            case ',':
                single(Token::Comma);
                return;
            case '|':
                single(Token::Pipe);
                return;
            case '.':
                single(Token::Dot);
                return;
            case ':':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                    tok_.kind = Token::Turnstile;
                    tok_.text = ":-";
                    pos_ += 2;
                    col_ += 2;
                    return;
                }
                throw ParseError(line_, col_, "stray ':'");
            case '?': {
                std::size_t start = ++pos_;
                ++col_;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    ++pos_;
                    ++col_;
                }
                if (pos_ == start) throw ParseError(line_, col_, "empty variable name after '?'");
                tok_.kind = Token::QVar;
                tok_.text = text_.substr(start, pos_ - start);
                return;
            }
            default:
                break;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            tok_.kind = Token::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

Role parse_role(Lexer& lx) {
    Token t = lx.expect(Token::Ident, "role name or Inv(...)");
    if (t.text == "Inv") {
        lx.expect(Token::LParen, "'('");
        Role inner = parse_role(lx);
        lx.expect(Token::RParen, "')'");
        return inner.inv();
    }
    return Role{t.text, false};
}

ConceptPtr parse_concept(Lexer& lx) {
    Token t = lx.expect(Token::Ident, "concept");
    const std::string& w = t.text;
    if (w == "Top") return Concept::top();
    if (w == "Bottom") return Concept::bottom();
    if (w == "And" || w == "Or") {
        lx.expect(Token::LParen, "'('");
        std::vector<ConceptPtr> kids;
        kids.push_back(parse_concept(lx));
        while (lx.peek().kind == Token::Comma) {
            lx.take();
            kids.push_back(parse_concept(lx));
        }
        lx.expect(Token::RParen, "')'");
        if (kids.size() < 2) throw ParseError(t.line, t.col, w + " needs at least two operands");
        return w == "And" ? Concept::conj(std::move(kids)) : Concept::disj(std::move(kids));
    }
    if (w == "Not") {
        lx.expect(Token::LParen, "'('");
        ConceptPtr c = parse_concept(lx);
        lx.expect(Token::RParen, "')'");
        return Concept::negation(c);
    }
    if (w == "Some" || w == "All") {
        lx.expect(Token::LParen, "'('");
        Role r = parse_role(lx);
        lx.expect(Token::Comma, "','");
        ConceptPtr c = parse_concept(lx);
        lx.expect(Token::RParen, "')'");
        return w == "Some" ? Concept::some(r, c) : Concept::all(r, c);
    }
    if (w == "HasSelf") {
        lx.expect(Token::LParen, "'('");
        Role r = parse_role(lx);
        lx.expect(Token::RParen, "')'");
        return Concept::self(r);
    }
    if (w == "Inv") throw ParseError(t.line, t.col, "Inv(...) is a role, not a concept");
    return Concept::atomic(w);
}

}  // namespace

TBox parse_tbox(const std::string& text) {
    Lexer lx(text);
    std::vector<Axiom> axioms;
    while (lx.peek().kind != Token::End) {
        Token t = lx.expect(Token::Ident, "axiom");
        const std::string& w = t.text;
        if (w == "SubClassOf") {
            lx.expect(Token::LParen, "'('");
            ConceptPtr l = parse_concept(lx);
            lx.expect(Token::Comma, "','");
            ConceptPtr r = parse_concept(lx);
            lx.expect(Token::RParen, "')'");
            axioms.push_back(Axiom::gci(l, r));
        } else if (w == "EquivalentClasses") {
            lx.expect(Token::LParen, "'('");
            std::vector<ConceptPtr> cs;
            cs.push_back(parse_concept(lx));
            while (lx.peek().kind == Token::Comma) {
                lx.take();
                cs.push_back(parse_concept(lx));
            }
            lx.expect(Token::RParen, "')'");
            if (cs.size() < 2) throw ParseError(t.line, t.col, "EquivalentClasses needs >= 2 concepts");
            for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
                axioms.push_back(Axiom::gci(cs[i], cs[i + 1]));
                axioms.push_back(Axiom::gci(cs[i + 1], cs[i]));
            }
        } else if (w == "SubRole") {
            lx.expect(Token::LParen, "'('");
            Role a = parse_role(lx);
            lx.expect(Token::Comma, "','");
            Role b = parse_role(lx);
            lx.expect(Token::RParen, "')'");
            axioms.push_back(Axiom::ria(a, b));
        } else if (w == "Transitive") {
            lx.expect(Token::LParen, "'('");
            Role r = parse_role(lx);
            lx.expect(Token::RParen, "')'");
            axioms.push_back(Axiom::transitivity(r));
        } else {
            throw ParseError(t.line, t.col, "unknown statement '" + w + "'");
        }
        if (lx.peek().kind == Token::Dot) lx.take();
    }
    return TBox(std::move(axioms));
}

ABox parse_abox(const std::string& text) {
    Lexer lx(text);
    ABox facts;
    while (lx.peek().kind != Token::End) {
        Token p = lx.expect(Token::Ident, "predicate");
        lx.expect(Token::LParen, "'('");
        Atom a{p.text, {}};
        a.args.push_back(Term::constant(lx.expect(Token::Ident, "individual").text));
        if (lx.peek().kind == Token::Comma) {
            lx.take();
            a.args.push_back(Term::constant(lx.expect(Token::Ident, "individual").text));
        }
        lx.expect(Token::RParen, "')'");
        if (lx.peek().kind == Token::Dot) lx.take();
        facts.push_back(std::move(a));
    }
    return facts;
}

GroundQuery parse_query(const std::string& text) {
    Lexer lx(text);
    GroundQuery q;
    std::set<std::string> seen;
    bool first = true;
    while (lx.peek().kind != Token::End) {
        if (!first) {
            if (lx.peek().kind == Token::Comma || lx.peek().kind == Token::Dot) {
                lx.take();
                if (lx.peek().kind == Token::End) break;
            }
        }
        first = false;
        Token p = lx.expect(Token::Ident, "predicate");
        lx.expect(Token::LParen, "'('");
        Atom a{p.text, {}};
        while (true) {
            Token arg = lx.take();
            if (arg.kind == Token::QVar) {
                a.args.push_back(Term::var(arg.text));
                if (seen.insert(arg.text).second) q.answer_vars.push_back(arg.text);
            } else if (arg.kind == Token::Ident) {
                a.args.push_back(Term::constant(arg.text));
            } else {
                throw ParseError(arg.line, arg.col, "expected individual or ?variable");
            }
            if (lx.peek().kind == Token::Comma) {
                lx.take();
                continue;
            }
            break;
        }
        lx.expect(Token::RParen, "')'");
        if (a.args.size() > 2) throw ParseError(p.line, p.col, "atoms have arity 1 or 2");
        q.atoms.push_back(std::move(a));
    }
    return q;
}

namespace {

Term program_arg(const Token& t) {
    if (std::isupper(static_cast<unsigned char>(t.text[0]))) return Term::var(t.text);
    return Term::constant(t.text);
}

Atom parse_program_atom(Lexer& lx, const Token& pred) {
    lx.expect(Token::LParen, "'('");
    Atom a{pred.text, {}};
    a.args.push_back(program_arg(lx.expect(Token::Ident, "argument")));
    if (lx.peek().kind == Token::Comma) {
        lx.take();
        a.args.push_back(program_arg(lx.expect(Token::Ident, "argument")));
    }
    lx.expect(Token::RParen, "')'");
    return a;
}

}  // namespace

std::vector<Rule> parse_program(const std::string& text) {
    Lexer lx(text);
    std::vector<Rule> rules;
    while (lx.peek().kind != Token::End) {
        Rule r;
        Token head = lx.expect(Token::Ident, "head atom or 'false'");
        if (head.text != "false") {
            r.head.push_back(parse_program_atom(lx, head));
            while (lx.peek().kind == Token::Pipe) {
                lx.take();
                Token h = lx.expect(Token::Ident, "head atom");
                r.head.push_back(parse_program_atom(lx, h));
            }
        }
        if (lx.peek().kind == Token::Turnstile) {
            lx.take();
            while (true) {
                Token b = lx.expect(Token::Ident, "body atom");
                r.body.push_back(parse_program_atom(lx, b));
                if (lx.peek().kind == Token::Comma) {
                    lx.take();
                    continue;
                }
                break;
            }
        }
        lx.expect(Token::Dot, "'.'");
        rules.push_back(std::move(r));
    }
    return rules;
}

std::string print_tbox(const TBox& t) {
    std::string out;
    for (const Axiom& ax : t.axioms()) out += ax.str() + "\n";
    return out;
}

std::string print_abox(const ABox& a) {
    std::string out;
    for (const Atom& f : a) out += f.str() + "\n";
    return out;
}

std::string print_query(const GroundQuery& q) {
    std::string out;
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        if (i) out += ", ";
        const Atom& a = q.atoms[i];
        out += a.pred + "(";
        for (std::size_t j = 0; j < a.args.size(); ++j) {
            if (j) out += ",";
            out += a.args[j].is_var() ? "?" + a.args[j].symbol() : a.args[j].symbol();
        }
        out += ")";
    }
    return out;
}

std::string print_program(const std::vector<Rule>& rules) {
    std::string out;
    for (const Rule& r : rules) out += r.str() + "\n";
    return out;
}

Rule clause_to_safe_rule(const Clause& c) {
    Rule r = clause_to_rule(c);
    std::set<std::string> bound;
    for (const Atom& b : r.body)
        for (const Term& t : b.args)
            if (t.is_var()) bound.insert(t.symbol());
    std::set<std::string> guard;
    for (const Atom& h : r.head)
        for (const Term& t : h.args)
            if (t.is_var() && !bound.count(t.symbol())) guard.insert(t.symbol());
    for (const std::string& v : guard) r.body.push_back(Atom{"Top", {Term::var(v)}});
    return r;
}

std::vector<Rule> clauses_to_safe_rules(const std::vector<Clause>& cs) {
    std::vector<Rule> out;
    out.reserve(cs.size());
    for (const Clause& c : cs) out.push_back(clause_to_safe_rule(c));
    return out;
}

}  // namespace shirew
