// Expression tape: a vector field recorded once from generic code, then
// replayed on any scalar type or expanded into Taylor coefficients.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "splitforge/scalar_ops.hpp"

namespace splitforge {

enum class OpCode : std::uint8_t {
    Input,
    Const,
    Add,
    Sub,
    Neg,
    Mul,
    Sqr,
    Div,
    AddC,  // a + c
    CSub,  // c - a
    MulC,  // c * a
    DivC,  // a / c
};

template <class T>
class Tape;

// Symbolic scalar: either a constant or a reference to a tape node.
template <class T>
class Sym {
public:
    Sym() : value_() {}
    Sym(const T& c) : value_(c) {}
    template <class U>
        requires(!std::is_same_v<U, T> && !std::is_same_v<U, Sym<T>> && std::is_convertible_v<U, T>)
    Sym(const U& c) : value_(T(c)) {}

    bool is_const() const { return id_ < 0; }
    int id() const { return id_; }
    const T& value() const { return value_; }
    Tape<T>* tape() const { return tape_; }

    static Sym node(Tape<T>* tape, int id) {
        Sym s;
        s.tape_ = tape;
        s.id_ = id;
        return s;
    }

    friend Sym operator+(const Sym& a, const Sym& b) {
        if (a.is_const() && b.is_const()) return Sym(a.value_ + b.value_);
        if (a.is_const()) return b.add_const(a.value_);
        if (b.is_const()) return a.add_const(b.value_);
        return a.binary(OpCode::Add, b);
    }
    friend Sym operator-(const Sym& a, const Sym& b) {
        if (a.is_const() && b.is_const()) return Sym(a.value_ - b.value_);
        if (b.is_const()) return a.add_const(-b.value_);
        if (a.is_const()) {
            if (a.value_ == T(0)) return -b;
            return Sym::node(b.tape_, b.tape_->add_node(OpCode::CSub, b.id_, -1, b.tape_->add_const(a.value_)));
        }
        return a.binary(OpCode::Sub, b);
    }
    friend Sym operator*(const Sym& a, const Sym& b) {
        if (a.is_const() && b.is_const()) return Sym(a.value_ * b.value_);
        if (a.is_const()) return b.mul_const(a.value_);
        if (b.is_const()) return a.mul_const(b.value_);
        if (a.id_ == b.id_) return Sym::node(a.tape_, a.tape_->add_node(OpCode::Sqr, a.id_, -1, -1));
        return a.binary(OpCode::Mul, b);
    }
    friend Sym operator/(const Sym& a, const Sym& b) {
        if (a.is_const() && b.is_const()) return Sym(a.value_ / b.value_);
        if (b.is_const()) {
            if (b.value_ == T(1)) return a;
            return Sym::node(a.tape_, a.tape_->add_node(OpCode::DivC, a.id_, -1, a.tape_->add_const(b.value_)));
        }
        if (a.is_const()) {
            if (a.value_ == T(0)) return Sym(T(0));
            const int c = b.tape_->add_node(OpCode::Const, -1, -1, b.tape_->add_const(a.value_));
            return Sym::node(b.tape_, b.tape_->add_node(OpCode::Div, c, b.id_, -1));
        }
        return a.binary(OpCode::Div, b);
    }
    Sym operator-() const {
        if (is_const()) return Sym(-value_);
        return Sym::node(tape_, tape_->add_node(OpCode::Neg, id_, -1, -1));
    }
    Sym& operator+=(const Sym& o) { return *this = *this + o; }
    Sym& operator-=(const Sym& o) { return *this = *this - o; }
    Sym& operator*=(const Sym& o) { return *this = *this * o; }
    Sym& operator/=(const Sym& o) { return *this = *this / o; }

private:
    Sym add_const(const T& c) const {
        if (c == T(0)) return *this;
        return Sym::node(tape_, tape_->add_node(OpCode::AddC, id_, -1, tape_->add_const(c)));
    }
    Sym mul_const(const T& c) const {
        if (c == T(0)) return Sym(T(0));
        if (c == T(1)) return *this;
        if (c == T(-1)) return -*this;
        return Sym::node(tape_, tape_->add_node(OpCode::MulC, id_, -1, tape_->add_const(c)));
    }
    Sym binary(OpCode op, const Sym& b) const {
        if (tape_ != b.tape_) throw std::logic_error("symbols from different tapes");
        return Sym::node(tape_, tape_->add_node(op, id_, b.id_, -1));
    }

    Tape<T>* tape_ = nullptr;
    int id_ = -1;
    T value_;
};

template <class T>
class Tape {
public:
    struct Node {
        OpCode op;
        int a;
        int b;
        int c;
    };

    Tape() = default;

    int add_node(OpCode op, int a, int b, int c) {
        nodes_.push_back({op, a, b, c});
        return static_cast<int>(nodes_.size()) - 1;
    }
    int add_const(const T& v) {
        constants_.push_back(v);
        return static_cast<int>(constants_.size()) - 1;
    }
    Sym<T> new_input() {
        const int id = add_node(OpCode::Input, -1, -1, -1);
        inputs_.push_back(id);
        return Sym<T>::node(this, id);
    }
    void set_outputs(const std::vector<Sym<T>>& outs) {
        outputs_.clear();
        for (const auto& s : outs) {
            if (s.is_const()) outputs_.push_back(add_node(OpCode::Const, -1, -1, add_const(s.value())));
            else {
                if (s.tape() != this) throw std::logic_error("output recorded on another tape");
                outputs_.push_back(s.id());
            }
        }
    }

    // f(const std::vector<Sym<T>>&) -> std::vector<Sym<T>>
    template <class F>
    static Tape record(std::size_t n_inputs, F&& f) {
        Tape tape;
        std::vector<Sym<T>> in;
        in.reserve(n_inputs);
        for (std::size_t i = 0; i < n_inputs; ++i) in.push_back(tape.new_input());
        tape.set_outputs(f(in));
        return tape;
    }

    // Evaluate on any scalar type constructible from T.
    template <class U>
    std::vector<U> replay(const std::vector<U>& in) const {
        if (in.size() != inputs_.size()) throw std::invalid_argument("tape input arity mismatch");
        std::vector<U> v(nodes_.size());
        std::size_t next_input = 0;
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            const Node& nd = nodes_[n];
            switch (nd.op) {
                case OpCode::Input: v[n] = in[next_input++]; break;
                case OpCode::Const: v[n] = U(constants_[nd.c]); break;
                case OpCode::Add: v[n] = v[nd.a] + v[nd.b]; break;
                case OpCode::Sub: v[n] = v[nd.a] - v[nd.b]; break;
                case OpCode::Neg: v[n] = -v[nd.a]; break;
                case OpCode::Mul: v[n] = v[nd.a] * v[nd.b]; break;
                case OpCode::Sqr: v[n] = v[nd.a] * v[nd.a]; break;
                case OpCode::Div: v[n] = v[nd.a] / v[nd.b]; break;
                case OpCode::AddC: v[n] = v[nd.a] + U(constants_[nd.c]); break;
                case OpCode::CSub: v[n] = U(constants_[nd.c]) - v[nd.a]; break;
                case OpCode::MulC: v[n] = U(constants_[nd.c]) * v[nd.a]; break;
                case OpCode::DivC: v[n] = v[nd.a] / U(constants_[nd.c]); break;
            }
        }
        std::vector<U> out;
        out.reserve(outputs_.size());
        for (int o : outputs_) out.push_back(v[o]);
        return out;
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<T>& constants() const { return constants_; }
    const std::vector<int>& inputs() const { return inputs_; }
    const std::vector<int>& outputs() const { return outputs_; }

private:
    std::vector<Node> nodes_;
    std::vector<T> constants_;
    std::vector<int> inputs_;
    std::vector<int> outputs_;
};

// Autonomous or time-dependent ODE y' = f(y, t) recorded with inputs (y_0..y_{n-1}, t).
template <class T>
struct OdeTape {
    Tape<T> tape;
    std::size_t dim = 0;

    // f(const std::vector<S>& y, const S& t) -> std::vector<S>
    template <class F>
    static OdeTape record(std::size_t n, F&& f) {
        OdeTape ode;
        ode.dim = n;
        ode.tape = Tape<T>::record(n + 1, [&](const std::vector<Sym<T>>& in) {
            std::vector<Sym<T>> y(in.begin(), in.begin() + static_cast<long>(n));
            auto out = f(y, in[n]);
            if (out.size() != n) throw std::invalid_argument("field arity mismatch");
            return out;
        });
        return ode;
    }

    template <class U>
    std::vector<U> eval(const std::vector<U>& y, const U& t) const {
        std::vector<U> in(y);
        in.push_back(t);
        return tape.replay(in);
    }
};

// Online Taylor coefficients of every tape node.
template <class T>
class TaylorJet {
public:
    TaylorJet(const Tape<T>& tape, int order) : tape_(&tape), order_(order) {
        coef_.assign(tape.nodes().size(), std::vector<T>(static_cast<std::size_t>(order) + 1));
        for (std::size_t n = 0; n < tape.nodes().size(); ++n) {
            const auto& nd = tape.nodes()[n];
            if (nd.op == OpCode::Const) ops::set(coef_[n][0], tape.constants()[nd.c]);
        }
    }

    int order() const { return order_; }
    std::vector<T>& series(int node) { return coef_[static_cast<std::size_t>(node)]; }
    const std::vector<T>& series(int node) const { return coef_[static_cast<std::size_t>(node)]; }

    // Fill order k of every non-input node; orders < k and input order k must be set.
    void compute(int k) {
        const auto& nodes = tape_->nodes();
        const auto& consts = tape_->constants();
        const auto uk = static_cast<std::size_t>(k);
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            const auto& nd = nodes[n];
            auto& r = coef_[n];
            switch (nd.op) {
                case OpCode::Input:
                case OpCode::Const: break;
                case OpCode::Add: ops::add(r[uk], coef_[nd.a][uk], coef_[nd.b][uk]); break;
                case OpCode::Sub: ops::sub(r[uk], coef_[nd.a][uk], coef_[nd.b][uk]); break;
                case OpCode::Neg: ops::neg(r[uk], coef_[nd.a][uk]); break;
                case OpCode::AddC:
                    if (k == 0) ops::add(r[0], coef_[nd.a][0], consts[nd.c]);
                    else ops::set(r[uk], coef_[nd.a][uk]);
                    break;
                case OpCode::CSub:
                    if (k == 0) ops::sub(r[0], consts[nd.c], coef_[nd.a][0]);
                    else ops::neg(r[uk], coef_[nd.a][uk]);
                    break;
                case OpCode::MulC: ops::mul(r[uk], coef_[nd.a][uk], consts[nd.c]); break;
                case OpCode::DivC: ops::div(r[uk], coef_[nd.a][uk], consts[nd.c]); break;
                case OpCode::Mul: {
                    const auto& a = coef_[nd.a];
                    const auto& b = coef_[nd.b];
                    ops::mul(r[uk], a[0], b[uk]);
                    for (std::size_t j = 1; j <= uk; ++j) ops::fma_acc(r[uk], a[j], b[uk - j], tmp_);
                    break;
                }
                case OpCode::Sqr: {
                    const auto& a = coef_[nd.a];
                    if (k == 0) {
                        ops::mul(r[0], a[0], a[0]);
                        break;
                    }
                    const std::size_t half = (uk - 1) / 2;
                    ops::mul(r[uk], a[0], a[uk]);
                    for (std::size_t j = 1; j <= half; ++j) ops::fma_acc(r[uk], a[j], a[uk - j], tmp_);
                    ops::mul_2ui(r[uk], r[uk], 1);
                    if (uk % 2 == 0) ops::fma_acc(r[uk], a[uk / 2], a[uk / 2], tmp_);
                    break;
                }
                case OpCode::Div: {
                    const auto& a = coef_[nd.a];
                    const auto& b = coef_[nd.b];
                    ops::set(acc_, a[uk]);
                    for (std::size_t j = 0; j < uk; ++j) ops::fms_acc(acc_, r[j], b[uk - j], tmp_);
                    ops::div(r[uk], acc_, b[0]);
                    break;
                }
            }
        }
    }

private:
    const Tape<T>* tape_;
    int order_;
    std::vector<std::vector<T>> coef_;
    T tmp_;
    T acc_;
};

}  // namespace splitforge
