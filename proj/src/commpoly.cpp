#include "fgpit/commpoly.hpp"

#include <stdexcept>

#include "fgpit/errors.hpp"

namespace fgpit {

std::string CommVar::str() const {
    switch (axis) {
        case Axis::Y:
            return "y(" + std::to_string(index) + "," + std::to_string(position) + ")";
        case Axis::Z:
            return "z(" + std::to_string(index) + "," + std::to_string(position) + ")";
        default:
            return "xi(" + std::to_string(index) + ")";
    }
}

CommPoly CommPoly::constant(const Scalar& c) {
    CommPoly p(c.field());
    p.add_term({}, c);
    return p;
}

int CommPoly::total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [v, e] : m) d += e;
        if (d > best) best = d;
    }
    return best;
}

CommPoly& CommPoly::add_term(const Monomial& m, const Scalar& coeff) {
    if (coeff.is_zero()) return *this;
    for (const auto& [v, e] : m)
        if (e <= 0) throw std::invalid_argument("monomial exponents must be positive");
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

CommPoly CommPoly::operator+(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

CommPoly CommPoly::operator-(const CommPoly& o) const {
    CommPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

bool CommPoly::operator==(const CommPoly& o) const { return terms_ == o.terms_; }

Scalar CommPoly::evaluate(const std::function<Scalar(const CommVar&)>& valuation) const {
    Scalar acc = field_->zero();
    for (const auto& [m, c] : terms_) {
        Scalar term = c;
        for (const auto& [v, e] : m) term = term * valuation(v).pow(static_cast<std::uint64_t>(e));
        acc = acc + term;
    }
    return acc;
}

std::string CommPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        s += c.str();
        for (const auto& [v, e] : m) {
            s += "*" + v.str();
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

CommPoly word_encoding(const AlgebraElement& f) {
    CommPoly p(f.field());
    for (const auto& [w, c] : f.terms()) {
        Monomial m;
        int pos = 1;
        for (const Letter& l : w.letters()) {
            m.emplace(l.sign > 0 ? CommVar::y(l.generator, pos) : CommVar::z(l.generator, pos), 1);
            ++pos;
        }
        p.add_term(m, c);
    }
    return p;
}

ReducedWord word_encoding_inverse(const Monomial& m) {
    std::map<int, Letter> by_position;
    for (const auto& [v, e] : m) {
        if (v.axis == CommVar::Axis::Xi) throw NotInImage("block variable " + v.str() + " has no preimage");
        if (e != 1) throw NotInImage("exponent " + std::to_string(e) + " on " + v.str());
        Letter l{v.index, v.axis == CommVar::Axis::Y ? 1 : -1};
        if (!by_position.emplace(v.position, l).second)
            throw NotInImage("two variables at position " + std::to_string(v.position));
    }
    std::vector<Letter> letters;
    int expect = 1;
    for (const auto& [pos, l] : by_position) {
        if (pos != expect)
            throw NotInImage("position gap at " + std::to_string(expect));
        letters.push_back(l);
        ++expect;
    }
    ReducedWord w = ReducedWord::reduce(letters);
    if (w.degree() != letters.size())
        throw NotInImage("decoded letter sequence is not reduced");
    return w;
}

}  // namespace fgpit
