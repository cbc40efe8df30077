#include "fgpit/algebra.hpp"

#include <stdexcept>

namespace fgpit {

AlgebraElement AlgebraElement::constant(const Scalar& c) {
    AlgebraElement e(c.field());
    e.add_term(ReducedWord{}, c);
    return e;
}

AlgebraElement AlgebraElement::from_word(const FieldPtr& field, const ReducedWord& w) {
    return from_word(field, w, field->one());
}

AlgebraElement AlgebraElement::from_word(const FieldPtr& field, const ReducedWord& w, const Scalar& coeff) {
    AlgebraElement e(field);
    e.add_term(w, coeff);
    return e;
}

int AlgebraElement::degree() const {
    if (terms_.empty()) return -1;
    // canonical order is length-lex, so the last term has maximal length
    return static_cast<int>(terms_.rbegin()->first.degree());
}

Scalar AlgebraElement::coefficient(const ReducedWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_->zero() : it->second;
}

AlgebraElement AlgebraElement::homogeneous_part(int deg) const {
    AlgebraElement r(field_);
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.degree()) == deg) r.terms_.emplace(w, c);
    return r;
}

AlgebraElement& AlgebraElement::add_term(const ReducedWord& w, const Scalar& coeff) {
    if (coeff.is_zero()) return *this;
    auto [it, inserted] = terms_.emplace(w, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

void AlgebraElement::check_field(const AlgebraElement& o) const {
    if (field_.get() != o.field_.get() && !field_->same(*o.field_))
        throw std::invalid_argument("algebra elements from different fields");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    check_field(o);
    AlgebraElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    check_field(o);
    AlgebraElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    check_field(o);
    AlgebraElement r(field_);
    for (const auto& [u, cu] : terms_)
        for (const auto& [v, cv] : o.terms_) r.add_term(u * v, cu * cv);
    return r;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement r(field_);
    if (c.is_zero()) return r;
    for (const auto& [w, coeff] : terms_) r.terms_.emplace(w, coeff * c);
    return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    check_field(o);
    return terms_ == o.terms_;
}

SquareMatrix AlgebraElement::evaluate(const MatrixAssignment& assignment) const {
    SquareMatrix acc(assignment.field(), assignment.dim());
    for (const auto& [w, c] : terms_) {
        SquareMatrix prod = SquareMatrix::identity(assignment.field(), assignment.dim());
        for (const Letter& l : w.letters())
            prod = prod * (l.sign > 0 ? assignment.matrix(l.generator) : assignment.inverse(l.generator));
        acc = acc + prod.scaled(assignment.field()->embed(c));
    }
    return acc;
}

std::string AlgebraElement::to_json() const {
    std::string s = "[";
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) s += ",";
        first = false;
        s += "{\"word\":\"" + w.str() + "\",\"coeff\":\"" + c.str() + "\"}";
    }
    return s + "]";
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        if (w.empty())
            s += c.str();
        else if (c.is_one())
            s += w.str();
        else
            s += c.str() + "*" + w.str();
    }
    return s;
}

}  // namespace fgpit
