#include "dasec/conic_model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dasec::conic {

Affine& Affine::add(const Affine& o, double scale) {
    for (const auto& [v, a] : o.terms) add(v, a * scale);
    c += o.c * scale;
    return *this;
}

Affine Affine::scaled(double s) const {
    Affine r;
    r.add(*this, s);
    return r;
}

double Affine::eval(const RVec& v) const {
    double s = c;
    for (const auto& [i, a] : terms) s += a * v[i];
    return s;
}

PsdCon::PsdCon(int d, std::string t) : dim(d), lower(static_cast<std::size_t>(d) * (d + 1) / 2), tag(std::move(t)) {}

std::size_t PsdCon::index(int dim, int i, int j) {
    if (i < j) std::swap(i, j);
    // column j starts after columns 0..j-1 of lengths dim, dim-1, ...
    const std::size_t start = static_cast<std::size_t>(j) * dim - static_cast<std::size_t>(j) * (j - 1) / 2;
    return start + (i - j);
}

Affine& PsdCon::at(int i, int j) { return lower[index(dim, i, j)]; }
const Affine& PsdCon::at(int i, int j) const { return lower[index(dim, i, j)]; }

RMat PsdCon::eval(const RVec& v) const {
    RMat m(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = j; i < dim; ++i) m(i, j) = m(j, i) = at(i, j).eval(v);
    return m;
}

VarRange ConicProgram::add_var_block(int count, double lb, double ub, const std::string& name) {
    if (count < 0) throw PreconditionError("add_var_block: negative count");
    const int begin = n_vars();
    const int n = begin + count;
    cost_.conservativeResize(n);
    lb_.conservativeResize(n);
    ub_.conservativeResize(n);
    cost_.tail(count).setZero();
    lb_.tail(count).setConstant(lb);
    ub_.tail(count).setConstant(ub);
    VarRange r{begin, count};
    names_.emplace_back(name.empty() ? "block" + std::to_string(names_.size()) : name, r);
    return r;
}

void ConicProgram::check() const {
    const int n = n_vars();
    auto chk = [&](const Affine& a, const std::string& tag) {
        for (const auto& [v, c] : a.terms) {
            if (v < 0 || v >= n) throw PreconditionError("constraint '" + tag + "' references variable out of range");
            if (!std::isfinite(c)) throw PreconditionError("constraint '" + tag + "' has a non-finite coefficient");
        }
        if (!std::isfinite(a.c)) throw PreconditionError("constraint '" + tag + "' has a non-finite constant");
    };
    for (const auto& l : linear_) chk(l.expr, l.tag);
    for (const auto& s : soc_) {
        chk(s.t, s.tag);
        for (const auto& y : s.y) chk(y, s.tag);
    }
    for (const auto& p : psd_) {
        if (p.dim < 1 || p.lower.size() != static_cast<std::size_t>(p.dim) * (p.dim + 1) / 2)
            throw PreconditionError("psd block '" + p.tag + "' malformed");
        for (const auto& a : p.lower) chk(a, p.tag);
    }
    for (int i = 0; i < n; ++i)
        if (lb_[i] > ub_[i]) throw PreconditionError("variable bounds crossed");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::NumericalTrouble: return "numerical_trouble";
    }
    return "?";
}

AuditReport audit(const ConicProgram& prog, const RVec& v) {
    AuditReport rep;
    auto note = [&](double viol, const std::string& tag) {
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_tag = tag;
        }
    };
    if (v.size() != prog.n_vars()) {
        rep.max_violation = kInf;
        rep.worst_tag = "dimension";
        return rep;
    }
    for (int i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) note(kInf, "non-finite");
        note(prog.lower()[i] - v[i], "lower_bound");
        note(v[i] - prog.upper()[i], "upper_bound");
    }
    for (const auto& l : prog.linear()) {
        const double e = l.expr.eval(v);
        switch (l.sense) {
            case Sense::Le: note(e, l.tag); break;
            case Sense::Ge: note(-e, l.tag); break;
            case Sense::Eq: note(std::abs(e), l.tag); break;
        }
    }
    for (const auto& s : prog.socs()) {
        double sq = 0.0;
        for (const auto& y : s.y) sq += std::pow(y.eval(v), 2);
        note(std::sqrt(sq) - s.t.eval(v), s.tag);
    }
    for (const auto& p : prog.psds()) {
        Eigen::SelfAdjointEigenSolver<RMat> es(p.eval(v), Eigen::EigenvaluesOnly);
        note(-es.eigenvalues().minCoeff(), p.tag);
    }
    return rep;
}

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string safe_tag(const std::string& t) {
    if (t.empty()) return "-";
    std::string s = t;
    for (char& ch : s)
        if (ch == ' ' || ch == '\t' || ch == '\n') ch = '_';
    return s;
}

void write_row(std::ostringstream& o, const Affine& a, int n) {
    RVec row = RVec::Zero(n);
    for (const auto& [v, c] : a.terms) row[v] += c;
    o << num(a.c);
    for (int i = 0; i < n; ++i) o << ' ' << num(row[i]);
    o << '\n';
}

const char* sense_name(Sense s) { return s == Sense::Le ? "le" : s == Sense::Ge ? "ge" : "eq"; }

class Reader {
public:
    explicit Reader(const std::string& text) : in_(text) {}

    std::string word() {
        std::string w;
        if (!(in_ >> w)) throw PreconditionError("parse_dump: unexpected end of input");
        return w;
    }
    void expect(const std::string& w) {
        if (word() != w) throw PreconditionError("parse_dump: expected '" + w + "'");
    }
    double number() {
        const std::string w = word();
        char* end = nullptr;
        const double x = std::strtod(w.c_str(), &end);
        if (end == w.c_str() || *end != '\0') throw PreconditionError("parse_dump: bad number '" + w + "'");
        return x;
    }
    long integer() {
        const double x = number();
        if (x != std::floor(x) || x < 0) throw PreconditionError("parse_dump: bad count");
        return static_cast<long>(x);
    }
    Affine row(int n) {
        Affine a(number());
        for (int i = 0; i < n; ++i) a.add(i, number());
        return a;
    }

private:
    std::istringstream in_;
};

}  // namespace

std::string dump(const ConicProgram& p) {
    const int n = p.n_vars();
    std::ostringstream o;
    o << "conic_program 1\n";
    o << "vars " << n << '\n';
    o << "blocks " << p.blocks().size() << '\n';
    for (const auto& [name, r] : p.blocks()) o << safe_tag(name) << ' ' << r.begin << ' ' << r.count << '\n';
    o << "bounds\n";
    for (int i = 0; i < n; ++i) o << num(p.lower()[i]) << ' ' << num(p.upper()[i]) << '\n';
    o << "objective\n" << num(p.cost_constant());
    for (int i = 0; i < n; ++i) o << ' ' << num(p.cost()[i]);
    o << '\n';
    int n_eq = 0;
    for (const auto& l : p.linear()) n_eq += l.sense == Sense::Eq;
    o << "equalities " << n_eq << '\n';
    for (const auto& l : p.linear())
        if (l.sense == Sense::Eq) {
            o << "eq " << safe_tag(l.tag) << '\n';
            write_row(o, l.expr, n);
        }
    o << "inequalities " << p.linear().size() - n_eq << '\n';
    for (const auto& l : p.linear())
        if (l.sense != Sense::Eq) {
            o << sense_name(l.sense) << ' ' << safe_tag(l.tag) << '\n';
            write_row(o, l.expr, n);
        }
    o << "socs " << p.socs().size() << '\n';
    for (const auto& s : p.socs()) {
        o << "soc " << safe_tag(s.tag) << ' ' << s.y.size() << '\n';
        write_row(o, s.t, n);
        for (const auto& y : s.y) write_row(o, y, n);
    }
    o << "psds " << p.psds().size() << '\n';
    for (const auto& s : p.psds()) {
        o << "psd " << safe_tag(s.tag) << ' ' << s.dim << '\n';
        for (const auto& a : s.lower) write_row(o, a, n);
    }
    o << "end\n";
    return o.str();
}

ConicProgram parse_dump(const std::string& text) {
    Reader r(text);
    r.expect("conic_program");
    if (r.integer() != 1) throw PreconditionError("parse_dump: unsupported version");
    r.expect("vars");
    const int n = static_cast<int>(r.integer());
    ConicProgram p;
    r.expect("blocks");
    const long nb = r.integer();
    int covered = 0;
    for (long b = 0; b < nb; ++b) {
        const std::string name = r.word();
        const long begin = r.integer();
        const long count = r.integer();
        if (begin != covered) throw PreconditionError("parse_dump: blocks not contiguous");
        p.add_var_block(static_cast<int>(count), -kInf, kInf, name);
        covered += static_cast<int>(count);
    }
    if (covered != n) throw PreconditionError("parse_dump: blocks do not cover vars");
    r.expect("bounds");
    for (int i = 0; i < n; ++i) {
        const double lb = r.number();
        const double ub = r.number();
        p.set_bounds(i, lb, ub);
    }
    r.expect("objective");
    p.set_cost_constant(r.number());
    for (int i = 0; i < n; ++i) p.set_cost(i, r.number());
    r.expect("equalities");
    const long neq = r.integer();
    for (long k = 0; k < neq; ++k) {
        r.expect("eq");
        const std::string tag = r.word();
        p.add_linear(r.row(n), Sense::Eq, tag);
    }
    r.expect("inequalities");
    const long nin = r.integer();
    for (long k = 0; k < nin; ++k) {
        const std::string s = r.word();
        if (s != "le" && s != "ge") throw PreconditionError("parse_dump: bad sense '" + s + "'");
        const std::string tag = r.word();
        p.add_linear(r.row(n), s == "le" ? Sense::Le : Sense::Ge, tag);
    }
    r.expect("socs");
    const long ns = r.integer();
    for (long k = 0; k < ns; ++k) {
        r.expect("soc");
        SocCon s;
        s.tag = r.word();
        const long m = r.integer();
        s.t = r.row(n);
        for (long j = 0; j < m; ++j) s.y.push_back(r.row(n));
        p.add_soc(std::move(s));
    }
    r.expect("psds");
    const long np = r.integer();
    for (long k = 0; k < np; ++k) {
        r.expect("psd");
        const std::string tag = r.word();
        PsdCon s(static_cast<int>(r.integer()), tag);
        for (auto& a : s.lower) a = r.row(n);
        p.add_psd(std::move(s));
    }
    r.expect("end");
    p.check();
    return p;
}

}  // namespace dasec::conic
