#ifndef SUBLIN_SLPENC_HPP
#define SUBLIN_SLPENC_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sublin/gf2.hpp"

namespace sublin {

/// Boolean circuit over inputs x_0 .. x_{d-1}; value slot q is input q for
/// q < d and the result of gate q - d otherwise. Gates only reference earlier
/// slots, so the circuit is acyclic by construction.
struct Circuit {
    enum class Op { AND, OR, NOT };
    struct Gate {
        Op op;
        std::size_t a = 0, b = 0;  // b ignored for NOT
    };
    unsigned d = 1;
    std::vector<Gate> gates;
    std::size_t output = 0;
};

struct Instruction {
    enum class Kind { constant, input_power, add, mul } kind;
    u64 value = 0;       // constant: coordinate vector
    unsigned k = 0;      // input_power: computes x^{2^k}
    std::size_t i = 0, j = 0;  // add/mul operands (earlier instruction indices)
};

struct StraightLineProgram {
    BinaryField field;
    std::vector<Instruction> instructions;
    std::size_t result = 0;
};

namespace detail {

inline void validate_circuit(const Circuit& c) {
    if (c.d < 1) throw math_error("circuit: need at least one input");
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        std::size_t limit = c.d + g;
        const Circuit::Gate& gate = c.gates[g];
        if (gate.a >= limit || (gate.op != Circuit::Op::NOT && gate.b >= limit))
            throw math_error("circuit: gate references a later slot");
    }
    if (c.output >= c.d + c.gates.size())
        throw math_error("circuit: output slot out of range");
}

/// Invert a square matrix over GF(2^d) by Gauss-Jordan elimination.
inline std::vector<std::vector<BinaryFieldElement>> invert_matrix(
    std::vector<std::vector<BinaryFieldElement>> m, const BinaryField& field) {
    const std::size_t n = m.size();
    std::vector<std::vector<BinaryFieldElement>> inv(
        n, std::vector<BinaryFieldElement>(n, BinaryFieldElement(0, field)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = BinaryFieldElement(1, field);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw math_error("invert_matrix: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        BinaryFieldElement s = m[col][col].inverse();
        for (std::size_t c = 0; c < n; ++c) {
            m[col][c] = m[col][c] * s;
            inv[col][c] = inv[col][c] * s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            BinaryFieldElement f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] = m[r][c] + f * m[col][c];
                inv[r][c] = inv[r][c] + f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Arithmetize a Boolean circuit over GF(2^d): coordinate bits of x in the
/// power basis are recovered as linear combinations of x, x^2, ..., x^{2^{d-1}}
/// (the coefficient matrix is a Moore/Vandermonde matrix in the basis
/// conjugates, hence invertible), gates become field arithmetic
/// (AND -> product, OR -> u + v + uv, NOT -> 1 + u), and the emitted result
/// is g = f + 1 so that g(x) = 0 exactly when the circuit accepts the bits
/// of x.
inline StraightLineProgram circuit_to_slp(const Circuit& c) {
    detail::validate_circuit(c);
    BinaryField field(c.d);
    const unsigned d = c.d;
    StraightLineProgram slp{field, {}, 0};
    auto& ins = slp.instructions;

    // Moore matrix M[j][i] = (alpha^i)^{2^j} where alpha^i has coordinate
    // vector 1 << i; x^{2^j} = sum_i x_i M[j][i].
    std::vector<std::vector<BinaryFieldElement>> M(
        d, std::vector<BinaryFieldElement>(d, BinaryFieldElement(0, field)));
    for (unsigned i = 0; i < d; ++i) {
        BinaryFieldElement b(u64(1) << i, field);
        for (unsigned j = 0; j < d; ++j) {
            M[j][i] = b;
            b = b.frobenius();
        }
    }
    std::vector<std::vector<BinaryFieldElement>> Minv = detail::invert_matrix(M, field);

    std::vector<std::size_t> pow_idx(d);
    for (unsigned j = 0; j < d; ++j) {
        Instruction p{Instruction::Kind::input_power};
        p.k = j;
        pow_idx[j] = ins.size();
        ins.push_back(p);
    }

    auto emit_const = [&](u64 v) {
        Instruction q{Instruction::Kind::constant};
        q.value = v;
        ins.push_back(q);
        return ins.size() - 1;
    };
    auto emit_bin = [&](Instruction::Kind k, std::size_t i, std::size_t j) {
        Instruction q{k};
        q.i = i;
        q.j = j;
        ins.push_back(q);
        return ins.size() - 1;
    };

    // x_i = sum_j Minv[i][j] * x^{2^j}
    std::vector<std::size_t> slot(d + c.gates.size());
    for (unsigned i = 0; i < d; ++i) {
        std::optional<std::size_t> acc;
        for (unsigned j = 0; j < d; ++j) {
            const BinaryFieldElement& coef = Minv[i][j];
            if (coef.is_zero()) continue;
            std::size_t term = pow_idx[j];
            if (coef.coords() != 1)
                term = emit_bin(Instruction::Kind::mul, emit_const(coef.coords()), term);
            acc = acc ? emit_bin(Instruction::Kind::add, *acc, term) : term;
        }
        slot[i] = acc ? *acc : emit_const(0);  // a zero row cannot happen (invertible)
    }

    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const Circuit::Gate& gate = c.gates[g];
        std::size_t a = slot[gate.a];
        switch (gate.op) {
            case Circuit::Op::AND:
                slot[d + g] = emit_bin(Instruction::Kind::mul, a, slot[gate.b]);
                break;
            case Circuit::Op::OR: {
                std::size_t b = slot[gate.b];
                std::size_t s = emit_bin(Instruction::Kind::add, a, b);
                std::size_t m = emit_bin(Instruction::Kind::mul, a, b);
                slot[d + g] = emit_bin(Instruction::Kind::add, s, m);
                break;
            }
            case Circuit::Op::NOT:
                slot[d + g] = emit_bin(Instruction::Kind::add, emit_const(1), a);
                break;
        }
    }

    slp.result = emit_bin(Instruction::Kind::add, emit_const(1), slot[c.output]);
    return slp;
}

/// Execute the program at x; x^{2^k} is obtained by k squarings, memoized
/// across instructions.
inline BinaryFieldElement slp_eval(const StraightLineProgram& s, const BinaryFieldElement& x) {
    if (!x.field().same_as(s.field)) throw math_error("slp_eval: field mismatch");
    std::vector<BinaryFieldElement> pows{x};
    std::vector<BinaryFieldElement> vals;
    vals.reserve(s.instructions.size());
    for (const Instruction& q : s.instructions) {
        switch (q.kind) {
            case Instruction::Kind::constant:
                vals.push_back(BinaryFieldElement(q.value, s.field));
                break;
            case Instruction::Kind::input_power:
                while (pows.size() <= q.k) pows.push_back(pows.back().frobenius());
                vals.push_back(pows[q.k]);
                break;
            case Instruction::Kind::add:
                vals.push_back(vals[q.i] + vals[q.j]);
                break;
            case Instruction::Kind::mul:
                vals.push_back(vals[q.i] * vals[q.j]);
                break;
        }
    }
    return vals[s.result];
}

/// First root of the program's polynomial in a fixed enumeration of GF(2^d).
inline std::optional<BinaryFieldElement> slp_root_bruteforce(const StraightLineProgram& s) {
    if (s.field.degree() > 24)
        throw capability_error("slp_root_bruteforce: field degree exceeds the ceiling");
    for (u64 v = 0; v < s.field.order(); ++v) {
        BinaryFieldElement x(v, s.field);
        if (slp_eval(s, x).is_zero()) return x;
    }
    return std::nullopt;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.d = j.at("d").get<unsigned>();
    for (const auto& gj : j.at("gates")) {
        Circuit::Gate g;
        std::string op = gj.at("op").get<std::string>();
        if (op == "AND")
            g.op = Circuit::Op::AND;
        else if (op == "OR")
            g.op = Circuit::Op::OR;
        else if (op == "NOT")
            g.op = Circuit::Op::NOT;
        else
            throw math_error("circuit_from_json: unknown gate op '" + op + "'");
        const auto& args = gj.at("args");
        g.a = args.at(0).get<std::size_t>();
        if (g.op != Circuit::Op::NOT) g.b = args.at(1).get<std::size_t>();
        c.gates.push_back(g);
    }
    c.output = j.at("output").get<std::size_t>();
    detail::validate_circuit(c);
    return c;
}

inline nlohmann::json slp_to_json(const StraightLineProgram& s) {
    nlohmann::json ins = nlohmann::json::array();
    for (const Instruction& q : s.instructions) {
        switch (q.kind) {
            case Instruction::Kind::constant:
                ins.push_back({{"op", "const"}, {"value", q.value}});
                break;
            case Instruction::Kind::input_power:
                ins.push_back({{"op", "input_power"}, {"k", q.k}});
                break;
            case Instruction::Kind::add:
                ins.push_back({{"op", "add"}, {"i", q.i}, {"j", q.j}});
                break;
            case Instruction::Kind::mul:
                ins.push_back({{"op", "mul"}, {"i", q.i}, {"j", q.j}});
                break;
        }
    }
    return {{"d", s.field.degree()},
            {"modulus", s.field.modulus()},
            {"result", s.result},
            {"instructions", ins}};
}

}  // namespace sublin

#endif
