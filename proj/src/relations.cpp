#include "septimal/relations.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "int_math.hpp"

#ifndef SEPTIMAL_DATA_DIR
#define SEPTIMAL_DATA_DIR "data"
#endif

namespace septimal {

using nlohmann::json;

std::string to_string(BasisElement b)
{
    switch (b) {
    case BasisElement::One:
        return "1";
    case BasisElement::P0:
        return "p0";
    case BasisElement::P1:
        return "p1";
    }
    return "?";
}

std::string to_string(UOperator op) { return op == UOperator::UA ? "UA" : "UB"; }

BasisElement parse_basis(std::string_view s)
{
    if (s == "1")
        return BasisElement::One;
    if (s == "p0")
        return BasisElement::P0;
    if (s == "p1")
        return BasisElement::P1;
    throw DomainError("unknown basis element '" + std::string(s) + "' (expected 1, p0 or p1)");
}

UOperator parse_operator(std::string_view s)
{
    if (s == "UA")
        return UOperator::UA;
    if (s == "UB")
        return UOperator::UB;
    throw DomainError("unknown operator '" + std::string(s) + "' (expected UA or UB)");
}

std::string RelationKey::to_string() const
{
    return septimal::to_string(op) + "," + septimal::to_string(arg) + "," + std::to_string(k);
}

RelationKey parse_relation_key(std::string_view s)
{
    const auto c1 = s.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
        throw DomainError("relation key must look like UB,1,-1; got '" + std::string(s) + "'");
    RelationKey key;
    key.op = parse_operator(s.substr(0, c1));
    key.arg = parse_basis(s.substr(c1 + 1, c2 - c1 - 1));
    const std::string k(s.substr(c2 + 1));
    std::size_t used = 0;
    try {
        key.k = std::stoi(k, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != k.size())
        throw DomainError("bad t-power '" + k + "' in relation key");
    return key;
}

const Relation *RelationFile::find(const RelationKey &key) const
{
    const auto it = std::find_if(relations.begin(), relations.end(), [&](const Relation &r) { return r.key == key; });
    return it == relations.end() ? nullptr : &*it;
}

namespace {

const json &field(const json &obj, const char *name, const std::string &path)
{
    if (!obj.is_object())
        throw SchemaError(path, "expected an object");
    const auto it = obj.find(name);
    if (it == obj.end())
        throw SchemaError(path, std::string("missing field '") + name + "'");
    return *it;
}

void allow_only(const json &obj, std::initializer_list<const char *> names, const std::string &path)
{
    for (const auto &[key, value] : obj.items()) {
        (void)value;
        if (std::none_of(names.begin(), names.end(), [&](const char *n) { return key == n; }))
            throw SchemaError(path, "unexpected field '" + key + "'");
    }
}

int as_int(const json &v, const std::string &path)
{
    if (!v.is_number_integer())
        throw SchemaError(path, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw SchemaError(path, "integer out of range");
    return static_cast<int>(x);
}

mpz_class as_big(const json &v, const std::string &path)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? mpz_class(std::to_string(v.get<std::uint64_t>()))
                                      : mpz_class(std::to_string(v.get<std::int64_t>()));
    if (v.is_string()) {
        mpz_class x;
        if (x.set_str(v.get<std::string>(), 10) == 0)
            return x;
    }
    throw SchemaError(path, "expected an integer or a decimal string");
}

template <class F>
auto with_path(const std::string &path, F &&f)
{
    try {
        return f();
    } catch (const DomainError &e) {
        throw SchemaError(path, e.what());
    }
}

std::vector<RelationTerm> parse_terms(const json &arr, const std::string &path)
{
    if (!arr.is_array())
        throw SchemaError(path, "expected an array of terms");
    std::vector<RelationTerm> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const json &t = arr[i];
        if (!t.is_object())
            throw SchemaError(p, "expected an object");
        allow_only(t, {"basis", "c", "e7", "j"}, p);
        const json &basis = field(t, "basis", p);
        if (!basis.is_string())
            throw SchemaError(p + ".basis", "expected a string");
        RelationTerm term;
        term.basis = with_path(p + ".basis", [&] { return parse_basis(basis.get<std::string>()); });
        term.c = as_big(field(t, "c", p), p + ".c");
        term.e7 = as_int(field(t, "e7", p), p + ".e7");
        term.j = as_int(field(t, "j", p), p + ".j");
        if (term.e7 < 0)
            throw SchemaError(p + ".e7", "must be non-negative");
        out.push_back(std::move(term));
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view src, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < src.size(); ++i) {
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

RelationFile parse_relations(std::string_view source)
{
    RelationFile file;
    const bool blank = std::all_of(source.begin(), source.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
    if (blank)
        return file;
    json doc;
    try {
        doc = json::parse(source.begin(), source.end());
    } catch (const json::parse_error &e) {
        const auto [line, col] = line_column(source, e.byte);
        std::string msg = e.what();
        if (const auto pos = msg.find("syntax error"); pos != std::string::npos)
            msg = msg.substr(pos);
        throw ParseError(msg, line, col);
    }
    if (!doc.is_object())
        throw SchemaError("$", "top level must be an object");
    allow_only(doc, {"relations", "l1_identity"}, "$");
    if (const auto it = doc.find("relations"); it != doc.end()) {
        if (!it->is_array())
            throw SchemaError("$.relations", "expected an array");
        std::set<RelationKey> seen;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "$.relations[" + std::to_string(i) + "]";
            const json &r = (*it)[i];
            if (!r.is_object())
                throw SchemaError(p, "expected an object");
            allow_only(r, {"group", "op", "arg", "k", "terms", "note", "printed_terms"}, p);
            Relation rel;
            const json &op = field(r, "op", p);
            const json &arg = field(r, "arg", p);
            if (!op.is_string() || !arg.is_string())
                throw SchemaError(p, "op and arg must be strings");
            rel.key.op = with_path(p + ".op", [&] { return parse_operator(op.get<std::string>()); });
            rel.key.arg = with_path(p + ".arg", [&] { return parse_basis(arg.get<std::string>()); });
            rel.key.k = as_int(field(r, "k", p), p + ".k");
            rel.terms = parse_terms(field(r, "terms", p), p + ".terms");
            if (const auto g = r.find("group"); g != r.end() && g->is_string())
                rel.group = g->get<std::string>();
            if (const auto n = r.find("note"); n != r.end() && n->is_string())
                rel.note = n->get<std::string>();
            if (const auto pt = r.find("printed_terms"); pt != r.end())
                rel.printed_terms = parse_terms(*pt, p + ".printed_terms");
            if (!seen.insert(rel.key).second)
                throw DuplicateKey("duplicate relation " + rel.key.to_string() + " at " + p);
            file.relations.push_back(std::move(rel));
        }
    }
    if (const auto it = doc.find("l1_identity"); it != doc.end()) {
        allow_only(*it, {"terms"}, "$.l1_identity");
        file.l1_identity = parse_terms(field(*it, "terms", "$.l1_identity"), "$.l1_identity.terms");
    }
    return file;
}

RelationFile load_relations(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open relation file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_relations(ss.str());
}

std::filesystem::path default_relations_path()
{
    if (const char *env = std::getenv("SEPTIMAL_RELATIONS"); env != nullptr && *env != '\0')
        return env;
    return std::filesystem::path(SEPTIMAL_DATA_DIR) / "appendix_relations.json";
}

Series basis_times_tpow(BasisElement b, int k, std::int64_t N, const CoeffRing &ring, const EtaQuotient &extra)
{
    EtaQuotient eq = t_quotient().pow(k) * extra;
    if (b == BasisElement::P0)
        eq = eq * p0_quotient();
    if (N <= eq.qexp())
        return Series::zero(ring, N);
    if (b == BasisElement::P1)
        return p1_times(eq, N, ring);
    return expand(eq, N, ring);
}

Series relation_lhs(const RelationKey &key, std::int64_t N, const CoeffRing &ring)
{
    // U_7 of a series known below 7(N-1)+1 is known below N.
    const std::int64_t input = uB_input_prec(N);
    const EtaQuotient extra = key.op == UOperator::UA ? A_quotient() : EtaQuotient{};
    return u7(basis_times_tpow(key.arg, key.k, input, ring, extra)).truncated(N);
}

Series relation_rhs(const std::vector<RelationTerm> &terms, std::int64_t N, const CoeffRing &ring)
{
    std::map<std::pair<BasisElement, int>, mpz_class> grouped;
    for (const auto &t : terms)
        grouped[{t.basis, t.j}] += t.value();
    Series sum = Series::zero(ring, N);
    for (const auto &[key, c] : grouped)
        if (c != 0)
            sum = add(sum, mul_scalar(basis_times_tpow(key.first, key.second, N, ring), c));
    return sum;
}

RelationReport verify_relation(const Relation &rel, std::int64_t N, const CoeffRing &ring)
{
    const Series lhs = relation_lhs(rel.key, N, ring);
    const Series rhs = relation_rhs(rel.terms, N, ring);
    return RelationReport{rel.key, compare_series(lhs, rhs, N)};
}

VerifySummary verify_all(const std::vector<Relation> &relations, std::int64_t N, const CoeffRing &ring)
{
    VerifySummary summary;
    summary.reports.resize(relations.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(relations.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < relations.size(); i = next++)
            summary.reports[i] = verify_relation(relations[i], N, ring);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::future<void>> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.push_back(std::async(std::launch::async, work));
        for (auto &f : pool)
            f.get();
    }
    for (const auto &r : summary.reports)
        if (!r.pass())
            summary.failures.push_back(r.key);
    return summary;
}

// Decomposition ----------------------------------------------------------------

mpz_class Decomposition::at(BasisElement b, int k) const
{
    const auto &m = part(b);
    const auto it = m.find(k);
    return it == m.end() ? mpz_class(0) : it->second;
}

namespace {

struct Column {
    BasisElement basis;
    int k;
    Series series;
};

std::vector<Column> basis_columns(int k_min, int k_max, std::int64_t N, const CoeffRing &ring)
{
    std::vector<Column> cols;
    for (const auto b : kBasis)
        for (int k = k_min; k <= k_max; ++k)
            cols.push_back({b, k, basis_times_tpow(b, k, N, ring)});
    return cols;
}

mpz_class coeff_or_zero(const Series &s, std::int64_t n) { return n < s.offset() ? mpz_class(0) : s.coeff(n); }

// Gauss-Jordan over Q. Returns the solution or throws AmbiguousDecomposition.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> m, std::size_t cols)
{
    const std::size_t rows = m.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            throw AmbiguousDecomposition("basis column " + std::to_string(c) + " has no pivot; raise N");
        std::swap(m[p], m[r]);
        const mpq_class inv = 1 / m[r][c];
        for (std::size_t x = c; x <= cols; ++x)
            m[r][x] *= inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || m[q][c] == 0)
                continue;
            const mpq_class f = m[q][c];
            for (std::size_t x = c; x <= cols; ++x)
                if (m[r][x] != 0)
                    m[q][x] -= f * m[r][x];
        }
        ++r;
    }
    std::vector<mpq_class> sol(cols);
    for (std::size_t c = 0; c < cols; ++c)
        sol[c] = m[c][cols];
    return sol;
}

// Gauss-Jordan over Z/7^e with unit pivots only.
std::vector<mpz_class> solve_modular(std::vector<std::vector<mpz_class>> m, std::size_t cols, const mpz_class &mod)
{
    const std::size_t rows = m.size();
    auto reduce = [&](mpz_class &x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()); };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = r;
        while (p < rows && mpz_divisible_ui_p(m[p][c].get_mpz_t(), 7))
            ++p;
        if (p == rows)
            throw AmbiguousDecomposition("basis column " + std::to_string(c) +
                                         " has no unit pivot mod 7; raise N or use the integer ring");
        std::swap(m[p], m[r]);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), m[r][c].get_mpz_t(), mod.get_mpz_t());
        for (std::size_t x = c; x <= cols; ++x) {
            m[r][x] *= inv;
            reduce(m[r][x]);
        }
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || m[q][c] == 0)
                continue;
            const mpz_class f = m[q][c];
            for (std::size_t x = c; x <= cols; ++x) {
                m[q][x] -= f * m[r][x];
                reduce(m[q][x]);
            }
        }
        ++r;
    }
    std::vector<mpz_class> sol(cols);
    for (std::size_t c = 0; c < cols; ++c)
        sol[c] = m[c][cols];
    return sol;
}

} // namespace

Decomposition decompose(const Series &g, int k_min, int k_max, std::int64_t N)
{
    if (k_max < k_min)
        throw DomainError("decompose needs k_min <= k_max");
    if (g.prec() < N)
        throw InsufficientPrecision(N, g.prec(), "decompose");
    const CoeffRing &ring = g.ring();
    const auto cols = basis_columns(k_min, k_max, N, ring);
    std::int64_t lo = std::min<std::int64_t>(g.offset(), N);
    for (const auto &c : cols)
        lo = std::min(lo, c.series.offset());
    const std::size_t ncols = cols.size();
    if (N - lo < static_cast<std::int64_t>(ncols))
        throw AmbiguousDecomposition("only " + std::to_string(N - lo) + " equations for " + std::to_string(ncols) +
                                     " unknowns; raise N");

    std::vector<std::vector<mpz_class>> rows;
    for (std::int64_t n = lo; n < N; ++n) {
        std::vector<mpz_class> row;
        row.reserve(ncols + 1);
        for (const auto &c : cols)
            row.push_back(coeff_or_zero(c.series, n));
        row.push_back(coeff_or_zero(g, n));
        rows.push_back(std::move(row));
    }

    std::vector<mpz_class> solution(ncols);
    if (ring.is_exact()) {
        std::vector<std::vector<mpq_class>> q;
        q.reserve(rows.size());
        for (const auto &row : rows)
            q.emplace_back(row.begin(), row.end());
        const auto sol = solve_rational(std::move(q), ncols);
        // Consistency on every equation before integrality.
        for (std::size_t i = 0; i < rows.size(); ++i) {
            mpq_class acc = -mpq_class(rows[i][ncols]);
            for (std::size_t c = 0; c < ncols; ++c)
                if (rows[i][c] != 0)
                    acc += rows[i][c] * sol[c];
            if (acc != 0)
                throw NonzeroResidual(lo + static_cast<std::int64_t>(i));
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            if (sol[c].get_den() != 1)
                throw NonIntegralSolution("coefficient of " + to_string(cols[c].basis) + " t^" +
                                          std::to_string(cols[c].k) + " is " + sol[c].get_str());
            solution[c] = sol[c].get_num();
        }
    } else {
        const mpz_class &mod = ring.modulus();
        solution = solve_modular(rows, ncols, mod);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            mpz_class acc = -rows[i][ncols];
            for (std::size_t c = 0; c < ncols; ++c)
                acc += rows[i][c] * solution[c];
            mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
            if (acc != 0)
                throw NonzeroResidual(lo + static_cast<std::int64_t>(i));
        }
    }

    Decomposition d;
    d.ring = ring;
    d.residual_prec = N;
    // Modular solutions keep zero residues: they still carry valuation information.
    for (std::size_t c = 0; c < ncols; ++c)
        if (solution[c] != 0 || !ring.is_exact())
            d.part(cols[c].basis)[cols[c].k] = solution[c];
    if (const auto mismatch = first_mismatch(reconstruct(d, N), g.truncated(N)))
        throw NonzeroResidual(*mismatch);
    return d;
}

Series reconstruct(const Decomposition &d, std::int64_t N)
{
    Series sum = Series::zero(d.ring, N);
    for (const auto b : kBasis)
        for (const auto &[k, c] : d.part(b))
            if (c != 0)
                sum = add(sum, mul_scalar(basis_times_tpow(b, k, N, d.ring), c));
    return sum;
}

Decomposition decomposition_from_terms(const std::vector<RelationTerm> &terms, const CoeffRing &ring)
{
    Decomposition d;
    d.ring = ring;
    for (const auto &t : terms)
        d.part(t.basis)[t.j] += t.value();
    for (auto &part : d.parts) {
        for (auto it = part.begin(); it != part.end();) {
            it->second = ring.reduce(it->second);
            it = it->second == 0 && ring.is_exact() ? part.erase(it) : std::next(it);
        }
    }
    return d;
}

// Valuation profiles -------------------------------------------------------------

int FloorRule::floor(int n, int k) const
{
    if (const auto it = overrides.find(n); it != overrides.end())
        return it->second;
    return static_cast<int>(detail::floor_div(n_mult * n + k_mult * k + shift, divisor));
}

int FloorRule::start(int k) const { return static_cast<int>(detail::ceil_div(start_k_mult * k + start_shift, start_div)); }

namespace {

FloorRule lattice_rule(int shift, int start)
{
    FloorRule r;
    r.shift = shift;
    r.start_shift = start;
    return r;
}

FloorRule template_rule(int shift, int start_shift)
{
    FloorRule r;
    r.k_mult = -1;
    r.shift = shift;
    r.start_k_mult = 1;
    r.start_shift = start_shift;
    r.start_div = 7;
    return r;
}

FloorRule forbidden()
{
    FloorRule r;
    r.allowed = false;
    return r;
}

} // namespace

ValuationProfile profile_XA()
{
    return {"X_A", {lattice_rule(2, 1), lattice_rule(2, 1), lattice_rule(5, 0)}};
}

ValuationProfile profile_XB()
{
    FloorRule p1 = lattice_rule(0, 0);
    p1.overrides[0] = 1; // the isolated 7 r_3(0) p_1 term
    return {"X_B", {lattice_rule(-3, 1), lattice_rule(-3, 1), p1}};
}

ValuationProfile template_profile(UOperator op, BasisElement arg)
{
    // Rules are listed in basis order {1, p0, p1}: (floor shift, start shift).
    const std::string name = "template " + to_string(op) + "(" + to_string(arg) + " t^k)";
    if (op == UOperator::UA) {
        switch (arg) {
        case BasisElement::P0:
            return {name, {template_rule(-2, 0), template_rule(-3, 6), template_rule(1, -1)}};
        case BasisElement::P1:
            return {name, {template_rule(-3, 5), template_rule(-3, 5), template_rule(0, -2)}};
        case BasisElement::One:
            return {name, {template_rule(-3, 4), template_rule(-2, 5), template_rule(1, -2)}};
        }
    }
    switch (arg) {
    case BasisElement::P0:
        return {name, {template_rule(0, 0), template_rule(-1, 3), template_rule(3, 0)}};
    case BasisElement::P1:
        return {name, {template_rule(-1, 1), template_rule(-1, 4), template_rule(2, 0)}};
    case BasisElement::One:
        return {name, {template_rule(-1, 0), forbidden(), forbidden()}};
    }
    throw DomainError("unknown template");
}

MembershipReport check_membership(const Decomposition &d, const ValuationProfile &profile, int extra, int template_k)
{
    MembershipReport report;
    report.profile = profile.name;
    report.extra = extra;
    report.decomposition = d;
    const bool exact = d.ring.is_exact();
    const int e = d.ring.exponent();
    for (const auto b : kBasis) {
        const FloorRule &rule = profile.rule(b);
        for (const auto &[n, c] : d.part(b)) {
            const mpz_class v = d.ring.reduce(c);
            const bool in_range = rule.allowed && n >= rule.start(template_k);
            const int required = rule.allowed ? rule.floor(n, template_k) + extra : kInfiniteValuation;
            if (v == 0) {
                // Exact zeros are outside the support. A zero residue mod 7^e only
                // bounds the valuation below by e.
                if (exact)
                    continue;
                if (!in_range || required > e)
                    throw IndeterminateValuation("coefficient of " + to_string(b) + " t^" + std::to_string(n) +
                                                 " vanishes in " + d.ring.name() + " but needs valuation " +
                                                 (rule.allowed ? std::to_string(required) : "infinity") +
                                                 "; raise the exponent or use the integers");
                report.min_slack = std::min(report.min_slack, e - required);
                continue;
            }
            const int actual = val7(v);
            if (!in_range) {
                report.violations.push_back({b, n, required, actual, rule.allowed});
                continue;
            }
            report.min_slack = std::min(report.min_slack, actual - required);
            if (actual < required)
                report.violations.push_back({b, n, required, actual, false});
        }
    }
    report.pass = report.violations.empty();
    return report;
}

MembershipReport check_membership(const Series &g, const ValuationProfile &profile, int extra, int k_min, int k_max,
                                  std::int64_t N)
{
    return check_membership(decompose(g, k_min, k_max, N), profile, extra);
}

// Extension ------------------------------------------------------------------------

namespace {

using TPoly = std::map<int, mpz_class>;
using Triple = std::array<TPoly, 3>;

Triple triple_from_terms(const std::vector<RelationTerm> &terms)
{
    Triple out;
    for (const auto &t : terms)
        out[static_cast<std::size_t>(t.basis)][t.j] += t.value();
    return out;
}

std::vector<RelationTerm> terms_from_triple(const Triple &tr)
{
    std::vector<RelationTerm> out;
    for (const auto b : {BasisElement::P0, BasisElement::P1, BasisElement::One}) {
        for (const auto &[n, value] : tr[static_cast<std::size_t>(b)]) {
            if (value == 0)
                continue;
            const int v = val7(value);
            out.push_back({b, value / pow7(static_cast<unsigned long>(v)), v, n});
        }
    }
    return out;
}

} // namespace

std::vector<Relation> extend_relations(const std::vector<Relation> &base, int target_k)
{
    if (base.empty())
        throw DomainError("extend_relations needs base relations");
    const UOperator op = base.front().key.op;
    const BasisElement arg = base.front().key.arg;
    std::map<int, Triple> known;
    for (const auto &r : base) {
        if (r.key.op != op || r.key.arg != arg)
            throw DomainError("base relations mix families: " + base.front().key.to_string() + " and " +
                              r.key.to_string());
        known[r.key.k] = triple_from_terms(r.terms);
    }
    const int k_top = known.rbegin()->first;
    for (int k = k_top - 6; k <= k_top; ++k)
        if (!known.count(k))
            throw DomainError("base must cover 7 consecutive t-powers ending at " + std::to_string(k_top) +
                              "; missing " + std::to_string(k));
    if (target_k <= k_top)
        throw DomainError("target t-power " + std::to_string(target_k) + " is not above the base range (max " +
                          std::to_string(k_top) + "); only forward extension is supported");

    const auto &a = modular_equation_coefficients();
    std::vector<Relation> out;
    for (int j = k_top + 1; j <= target_k; ++j) {
        Triple next;
        for (int l = 0; l < 7; ++l) {
            const Triple &prev = known.at(j + l - 7);
            for (const auto &[p, coef] : a[static_cast<std::size_t>(l)].coeffs)
                for (std::size_t b = 0; b < 3; ++b)
                    for (const auto &[n, c] : prev[b])
                        next[b][n + p] += coef * c;
        }
        known[j] = next;
        Relation rel;
        rel.key = {op, arg, j};
        rel.terms = terms_from_triple(next);
        rel.note = "synthesized from t-powers " + std::to_string(k_top - 6) + ".." + std::to_string(k_top);
        out.push_back(std::move(rel));
    }
    return out;
}

Relation extend_relation(const std::vector<Relation> &base, int target_k) { return extend_relations(base, target_k).back(); }

} // namespace septimal

namespace septimal {

Decomposition apply_relations(UOperator op, const Decomposition &g, const std::vector<Relation> &relations)
{
    if (!g.ring.is_exact())
        throw DomainError("apply_relations works over the integers");
    Decomposition out;
    for (const auto arg : kBasis) {
        const auto &part = g.part(arg);
        if (part.empty())
            continue;
        std::vector<Relation> family;
        for (const auto &r : relations)
            if (r.key.op == op && r.key.arg == arg)
                family.push_back(r);
        if (family.empty())
            throw DomainError("no relations for " + to_string(op) + "(" + to_string(arg) + " t^k)");
        std::map<int, const std::vector<RelationTerm> *> by_k;
        for (const auto &r : family)
            by_k[r.key.k] = &r.terms;
        const int need = part.rbegin()->first;
        std::vector<Relation> extended;
        if (need > by_k.rbegin()->first) {
            extended = extend_relations(family, need);
            for (const auto &r : extended)
                by_k[r.key.k] = &r.terms;
        }
        for (const auto &[k, c] : part) {
            const auto it = by_k.find(k);
            if (it == by_k.end())
                throw DomainError("no relation for " + to_string(op) + "(" + to_string(arg) + " t^" +
                                  std::to_string(k) + ")");
            for (const auto &t : *it->second)
                out.part(t.basis)[t.j] += c * t.value();
        }
    }
    for (auto &p : out.parts)
        std::erase_if(p, [](const auto &kv) { return kv.second == 0; });
    return out;
}

} // namespace septimal
