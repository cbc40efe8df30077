#include "fgpit/expression.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "fgpit/errors.hpp"

namespace fgpit {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a > std::numeric_limits<std::int64_t>::max() - b) return std::numeric_limits<std::int64_t>::max();
    return a + b;
}

}  // namespace

// ---- builder ----

class ExpressionBuilder {
  public:
    ExpressionBuilder(FieldPtr field, int alphabet) : e_(std::move(field), alphabet) {}

    int constant(Scalar c) {
        Expression::Node n;
        n.kind = Expression::Kind::Const;
        n.value = std::move(c);
        return push(std::move(n));
    }
    int variable(int gen, bool inverted) {
        Expression::Node n;
        n.kind = inverted ? Expression::Kind::InvVar : Expression::Kind::Var;
        n.generator = gen;
        return push(std::move(n));
    }
    int add(int a, int b) {
        Expression::Node n;
        n.kind = Expression::Kind::Add;
        n.lhs = a;
        n.rhs = b;
        return push(std::move(n));
    }
    int mul(int a, int b) {
        Expression::Node n;
        n.kind = Expression::Kind::Mul;
        n.lhs = a;
        n.rhs = b;
        return push(std::move(n));
    }
    // x_g^e or (x_g^-1)^e with e >= 1
    int var_power(int gen, bool inverted, std::int64_t e) {
        if (e == 1) return variable(gen, inverted);
        Expression::Node n;
        n.kind = Expression::Kind::Pow;
        n.generator = gen;
        n.base_inverted = inverted ? 1 : 0;
        n.exponent = e;
        return push(std::move(n));
    }
    // node^e for e >= 1, unrolled square-and-multiply over shared nodes
    int power(int node, std::int64_t e) {
        if (e == 1) return node;
        int half = power(node, e / 2);
        int sq = mul(half, half);
        return (e % 2 == 0) ? sq : mul(sq, node);
    }

    Expression::Kind kind_of(int node) const { return e_.nodes_[node].kind; }
    const Scalar& const_of(int node) const { return e_.nodes_[node].value; }

    Expression finish(int root) {
        e_.root_ = root;
        return std::move(e_);
    }

  private:
    int push(Expression::Node n) {
        e_.nodes_.push_back(std::move(n));
        return static_cast<int>(e_.nodes_.size()) - 1;
    }
    Expression e_;
};

// ---- parser ----

namespace {

struct Token {
    enum class Type { Int, Var, Plus, Minus, Star, Caret, LParen, RParen, End };
    Type type;
    std::size_t pos;
    std::uint64_t number = 0;  // Int: magnitude; Var: generator index
    bool overflow = false;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else {
                break;
            }
        }
        current_.pos = i_;
        if (i_ >= text_.size()) {
            current_.type = Token::Type::End;
            return;
        }
        char c = text_[i_];
        switch (c) {
            case '+': current_.type = Token::Type::Plus; ++i_; return;
            case '-': current_.type = Token::Type::Minus; ++i_; return;
            case '*': current_.type = Token::Type::Star; ++i_; return;
            case '^': current_.type = Token::Type::Caret; ++i_; return;
            case '(': current_.type = Token::Type::LParen; ++i_; return;
            case ')': current_.type = Token::Type::RParen; ++i_; return;
            default: break;
        }
        if (c == 'x') {
            std::size_t start = ++i_;
            current_.number = read_digits(current_.overflow);
            if (i_ == start) throw ParseError(current_.pos, "expected generator index after 'x'");
            current_.type = Token::Type::Var;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            current_.number = read_digits(current_.overflow);
            current_.type = Token::Type::Int;
            return;
        }
        throw ParseError(i_, std::string("unexpected character '") + c + "'");
    }

    std::uint64_t read_digits(bool& overflow) {
        std::uint64_t v = 0;
        overflow = false;
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
            std::uint64_t d = static_cast<std::uint64_t>(text_[i_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) overflow = true;
            v = v * 10 + d;
            ++i_;
        }
        return v;
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Token current_;
};

class Parser {
  public:
    Parser(std::string_view text, int alphabet, const FieldPtr& field)
        : lex_(text), alphabet_(alphabet), field_(field), builder_(field, alphabet) {}

    Expression run() {
        int root = parse_expr();
        const Token& t = lex_.peek();
        if (t.type != Token::Type::End) throw ParseError(t.pos, "trailing input");
        return builder_.finish(root);
    }

  private:
    int parse_expr() {
        int acc = parse_term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.type == Token::Type::Plus) {
                lex_.take();
                acc = builder_.add(acc, parse_term());
            } else if (t.type == Token::Type::Minus) {
                lex_.take();
                int rhs = parse_term();
                acc = builder_.add(acc, builder_.mul(builder_.constant(field_->from_int(-1)), rhs));
            } else {
                return acc;
            }
        }
    }

    int parse_term() {
        int acc = parse_factor();
        while (lex_.peek().type == Token::Type::Star) {
            lex_.take();
            acc = builder_.mul(acc, parse_factor());
        }
        return acc;
    }

    // exponent after '^': optionally signed 64-bit integer
    std::int64_t parse_exponent() {
        bool negative = false;
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.take();
            negative = true;
        }
        Token t = lex_.peek();
        if (t.type != Token::Type::Int) throw ParseError(t.pos, "expected integer exponent after '^'");
        lex_.take();
        if (t.overflow || t.number > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw ParseError(t.pos, "exponent out of range");
        auto v = static_cast<std::int64_t>(t.number);
        return negative ? -v : v;
    }

    int parse_factor() {
        Token t = lex_.peek();
        if (t.type == Token::Type::Var) {
            lex_.take();
            if (t.overflow || t.number == 0 || t.number > static_cast<std::uint64_t>(alphabet_))
                throw ParseError(t.pos, "generator index out of range (alphabet size " +
                                            std::to_string(alphabet_) + ")");
            int gen = static_cast<int>(t.number);
            if (lex_.peek().type != Token::Type::Caret) return builder_.variable(gen, false);
            lex_.take();
            std::int64_t e = parse_exponent();
            if (e == 0) return builder_.constant(field_->one());
            if (e > 0) return builder_.var_power(gen, false, e);
            return builder_.var_power(gen, true, -e);
        }
        int atom = parse_nonvar_atom(t);
        if (lex_.peek().type != Token::Type::Caret) return atom;
        std::size_t caret_pos = lex_.peek().pos;
        lex_.take();
        std::int64_t e = parse_exponent();
        if (e < 0)
            throw ParseError(caret_pos, "negative power of a non-variable subexpression "
                                        "(only variables may be inverted)");
        if (e == 0) return builder_.constant(field_->one());
        return apply_positive_power(atom, e, caret_pos);
    }

    int parse_nonvar_atom(const Token& t) {
        if (t.type == Token::Type::Int) {
            lex_.take();
            return builder_.constant(uint_to_scalar(t, false));
        }
        if (t.type == Token::Type::Minus) {
            lex_.take();
            Token num = lex_.peek();
            if (num.type != Token::Type::Int)
                throw ParseError(t.pos, "expected integer literal after unary '-'");
            lex_.take();
            return builder_.constant(uint_to_scalar(num, true));
        }
        if (t.type == Token::Type::LParen) {
            lex_.take();
            int inner = parse_expr();
            Token close = lex_.peek();
            if (close.type != Token::Type::RParen) throw ParseError(close.pos, "expected ')'");
            lex_.take();
            return inner;
        }
        throw ParseError(t.pos, "expected a variable, integer literal or '('");
    }

    Scalar uint_to_scalar(const Token& t, bool negative) const {
        mpz_class z;
        std::uint64_t v = t.number;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        if (t.overflow) throw ParseError(t.pos, "integer literal out of range");
        if (negative) z = -z;
        return field_->from_rational(mpq_class(z));
    }

    int apply_positive_power(int atom, std::int64_t e, std::size_t pos) {
        if (builder_.kind_of(atom) == Expression::Kind::Const) {
            if (e > (1 << 20)) throw ParseError(pos, "constant power too large to fold");
            return builder_.constant(builder_.const_of(atom).pow(static_cast<std::uint64_t>(e)));
        }
        return builder_.power(atom, e);
    }

    Lexer lex_;
    int alphabet_;
    FieldPtr field_;
    ExpressionBuilder builder_;
};

}  // namespace

Expression Expression::parse(std::string_view text, int alphabet, const FieldPtr& field) {
    if (alphabet < 1) throw std::invalid_argument("alphabet size must be positive");
    Parser p(text, alphabet, field);
    return p.run();
}

// ---- from_algebra ----

Expression Expression::from_algebra(const AlgebraElement& element, int alphabet) {
    ExpressionBuilder b(element.field(), alphabet);
    int acc = -1;
    for (const auto& [w, c] : element.terms()) {
        for (const Letter& l : w.letters())
            if (l.generator > alphabet)
                throw std::invalid_argument("element uses generator beyond the alphabet");
        int term;
        if (w.empty()) {
            term = b.constant(c);
        } else {
            term = -1;
            for (const Letter& l : w.letters()) {
                int leaf = b.variable(l.generator, l.sign < 0);
                term = term < 0 ? leaf : b.mul(term, leaf);
            }
            if (!c.is_one()) term = b.mul(b.constant(c), term);
        }
        acc = acc < 0 ? term : b.add(acc, term);
    }
    if (acc < 0) acc = b.constant(element.field()->zero());
    return b.finish(acc);
}

// ---- printing ----

namespace {

// precedence: Add 1, Mul 2, atoms 3
void print_node(const Expression& e, int idx, int parent_prec, std::string& out) {
    const auto& n = e.nodes()[idx];
    switch (n.kind) {
        case Expression::Kind::Const: {
            const Scalar& c = n.value;
            const Field& f = *c.field();
            std::string s;
            if (f.is_rational()) {
                if (c.rational().get_den() != 1)
                    throw std::logic_error("non-integer constant is not printable in the grammar");
                s = c.rational().get_str();
            } else if (f.extension_degree() == 1) {
                s = c.str();
            } else {
                // printable only when the value lies in the prime subfield
                Scalar probe = c;
                std::string full = c.str();  // "[c0,c1,...]"
                auto comma = full.find(',');
                std::string c0 = full.substr(1, comma - 1);
                Scalar lifted = c.field()->from_rational(mpq_class(c0));
                if (!(lifted == c))
                    throw std::logic_error("extension-field constant is not printable in the grammar");
                s = c0;
            }
            bool neg = !s.empty() && s[0] == '-';
            if (neg && parent_prec >= 3) {
                out += "(" + s + ")";
            } else {
                out += s;
            }
            return;
        }
        case Expression::Kind::Var:
            out += "x" + std::to_string(n.generator);
            return;
        case Expression::Kind::InvVar:
            out += "x" + std::to_string(n.generator) + "^-1";
            return;
        case Expression::Kind::Pow:
            out += "x" + std::to_string(n.generator) + "^" +
                   (n.base_inverted ? "-" : "") + std::to_string(n.exponent);
            return;
        case Expression::Kind::Add: {
            bool parens = parent_prec > 1;
            if (parens) out += "(";
            print_node(e, n.lhs, 1, out);
            out += " + ";
            print_node(e, n.rhs, 1, out);
            if (parens) out += ")";
            return;
        }
        case Expression::Kind::Mul: {
            bool parens = parent_prec > 2;
            if (parens) out += "(";
            print_node(e, n.lhs, 2, out);
            out += "*";
            print_node(e, n.rhs, 2, out);
            if (parens) out += ")";
            return;
        }
    }
}

}  // namespace

std::string Expression::str() const {
    std::string out;
    print_node(*this, root_, 0, out);
    return out;
}

// ---- evaluation ----

SquareMatrix Expression::evaluate(const MatrixAssignment& assignment) const {
    if (assignment.alphabet() < alphabet_)
        throw std::invalid_argument("assignment covers fewer generators than the expression uses");
    std::vector<std::optional<SquareMatrix>> memo(nodes_.size());
    const FieldPtr& f = assignment.field();
    const std::size_t dim = assignment.dim();

    auto eval = [&](auto&& self, int idx) -> const SquareMatrix& {
        if (memo[idx]) return *memo[idx];
        const Node& n = nodes_[idx];
        switch (n.kind) {
            case Kind::Const:
                memo[idx] = SquareMatrix::identity(f, dim).scaled(f->embed(n.value));
                break;
            case Kind::Var:
                memo[idx] = assignment.matrix(n.generator);
                break;
            case Kind::InvVar:
                memo[idx] = assignment.inverse(n.generator);
                break;
            case Kind::Add:
                memo[idx] = self(self, n.lhs) + self(self, n.rhs);
                break;
            case Kind::Mul:
                memo[idx] = self(self, n.lhs) * self(self, n.rhs);
                break;
            case Kind::Pow: {
                SquareMatrix base =
                    n.base_inverted ? assignment.inverse(n.generator) : assignment.matrix(n.generator);
                SquareMatrix acc = SquareMatrix::identity(f, dim);
                std::uint64_t e = static_cast<std::uint64_t>(n.exponent);
                while (e) {
                    if (e & 1) acc = acc * base;
                    base = base * base;
                    e >>= 1;
                }
                memo[idx] = std::move(acc);
                break;
            }
        }
        return *memo[idx];
    };
    return eval(eval, root_);
}

// ---- expansion oracle ----

AlgebraElement Expression::expand(std::int64_t degree_guard, std::int64_t sparsity_guard) const {
    if (degree_guard <= 0 || sparsity_guard <= 0)
        throw std::invalid_argument("expansion guards must be positive");
    std::vector<std::optional<AlgebraElement>> memo(nodes_.size());

    auto check = [&](const AlgebraElement& e) {
        if (e.degree() > degree_guard)
            throw GuardExceeded(GuardExceeded::Kind::Degree,
                                "expansion degree exceeds guard " + std::to_string(degree_guard));
        if (e.sparsity() > static_cast<std::uint64_t>(sparsity_guard))
            throw GuardExceeded(GuardExceeded::Kind::Sparsity,
                                "expansion sparsity exceeds guard " + std::to_string(sparsity_guard));
    };

    auto eval = [&](auto&& self, int idx) -> const AlgebraElement& {
        if (memo[idx]) return *memo[idx];
        const Node& n = nodes_[idx];
        switch (n.kind) {
            case Kind::Const:
                memo[idx] = AlgebraElement::constant(n.value);
                break;
            case Kind::Var:
                memo[idx] = AlgebraElement::from_word(field_, ReducedWord::single(n.generator, 1));
                break;
            case Kind::InvVar:
                memo[idx] = AlgebraElement::from_word(field_, ReducedWord::single(n.generator, -1));
                break;
            case Kind::Add:
                memo[idx] = self(self, n.lhs) + self(self, n.rhs);
                break;
            case Kind::Mul:
                memo[idx] = self(self, n.lhs) * self(self, n.rhs);
                break;
            case Kind::Pow: {
                if (n.exponent > degree_guard)
                    throw GuardExceeded(GuardExceeded::Kind::Degree,
                                        "power exceeds degree guard " + std::to_string(degree_guard));
                std::vector<Letter> letters(static_cast<std::size_t>(n.exponent),
                                            Letter{n.generator, n.base_inverted ? -1 : 1});
                memo[idx] = AlgebraElement::from_word(field_, ReducedWord::reduce(letters));
                break;
            }
        }
        check(*memo[idx]);
        return *memo[idx];
    };
    return eval(eval, root_);
}

std::int64_t Expression::syntactic_degree_bound() const {
    std::vector<std::int64_t> memo(nodes_.size(), -1);
    auto eval = [&](auto&& self, int idx) -> std::int64_t {
        if (memo[idx] >= 0) return memo[idx];
        const Node& n = nodes_[idx];
        std::int64_t r = 0;
        switch (n.kind) {
            case Kind::Const: r = 0; break;
            case Kind::Var:
            case Kind::InvVar: r = 1; break;
            case Kind::Pow: r = n.exponent; break;
            case Kind::Add: r = std::max(self(self, n.lhs), self(self, n.rhs)); break;
            case Kind::Mul: r = sat_add(self(self, n.lhs), self(self, n.rhs)); break;
        }
        memo[idx] = r;
        return r;
    };
    return eval(eval, root_);
}

// ---- black box ----

BlackBox BlackBox::from_expression(const Expression& e) {
    Expression copy = e;
    return BlackBox(
        e.alphabet(), [expr = std::move(copy)](const MatrixAssignment& a) { return expr.evaluate(a); },
        e.syntactic_degree_bound(), std::nullopt);
}

BlackBox BlackBox::minus(const AlgebraElement& g) const {
    Eval base = eval_;
    AlgebraElement sub = g;
    return BlackBox(
        alphabet_,
        [base, sub](const MatrixAssignment& a) { return base(a) - sub.evaluate(a); },
        degree_bound_, sparsity_bound_);
}

// ---- random corpora ----

Expression random_expression(Rng& rng, int alphabet, int depth, const FieldPtr& field) {
    ExpressionBuilder b(field, alphabet);
    auto leaf = [&]() -> int {
        std::uint64_t pick = rng.below(4);
        int gen = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
        if (pick < 2) return b.variable(gen, false);
        if (pick == 2) return b.variable(gen, true);
        std::int64_t c = static_cast<std::int64_t>(rng.below(5)) - 2;
        return b.constant(field->from_int(c));
    };
    auto gen_node = [&](auto&& self, int d) -> int {
        if (d <= 0) return leaf();
        std::uint64_t pick = rng.below(100);
        if (pick < 30) return b.add(self(self, d - 1), self(self, d - 1));
        if (pick < 60) return b.mul(self(self, d - 1), self(self, d - 1));
        if (pick < 75) {
            int gen = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
            bool inv = rng.below(2) == 1;
            std::int64_t e = 2 + static_cast<std::int64_t>(rng.below(3));
            return b.var_power(gen, inv, e);
        }
        return leaf();
    };
    return b.finish(gen_node(gen_node, depth));
}

ReducedWord random_reduced_word(Rng& rng, int alphabet, int degree) {
    std::vector<Letter> letters;
    letters.reserve(degree);
    for (int i = 0; i < degree; ++i) {
        for (;;) {
            int gen = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
            int sign = rng.below(2) == 0 ? 1 : -1;
            Letter l{gen, sign};
            if (!letters.empty() && letters.back() == l.inverse()) continue;
            letters.push_back(l);
            break;
        }
    }
    return ReducedWord::reduce(letters);
}

AlgebraElement random_sparse_element(Rng& rng, const FieldPtr& field, int alphabet, int sparsity,
                                     int degree, bool exact_degree) {
    AlgebraElement e(field);
    auto coeff = [&]() {
        static const int pool[4] = {-2, -1, 1, 2};
        return field->from_int(pool[rng.below(4)]);
    };
    int attempts = 0;
    while (static_cast<int>(e.sparsity()) < sparsity && attempts < 64 * sparsity) {
        ++attempts;
        int d;
        if (exact_degree && e.is_zero())
            d = degree;
        else
            d = static_cast<int>(rng.below(static_cast<std::uint64_t>(degree) + 1));
        ReducedWord w = random_reduced_word(rng, alphabet, d);
        if (!e.coefficient(w).is_zero()) continue;
        e.add_term(w, coeff());
    }
    return e;
}

}  // namespace fgpit
