// momentlab: decide whether q(n)/p(n) is a Hausdorff moment sequence and
// inspect the weight function behind it. JSON reports on stdout are
// deterministic for a fixed seed; timing goes to stderr.

#include "momentlab/classify.hpp"
#include "momentlab/convolution.hpp"
#include "momentlab/divdiff.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/kernel.hpp"
#include "momentlab/pfd.hpp"
#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"
#include "momentlab/weight.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;
using namespace momentlab;

namespace {

struct Options {
    std::string q = "coeffs=[1]";
    std::string p;
    int grid = 4000;
    int maxOrder = 25;
    double tol = 1e-12;
    unsigned long long seed = 12345;
    std::string format = "json";
    std::string out;
    double c = 1.0;  // counterexample only
};

// polynomial spec grammar: coeffs=[c0,c1,...] ascending, or
// roots=[(re,im,mult),...] with automatic conjugate completion (monic)
struct PolySpec {
    RealPolynomial poly{std::vector<double>{0.0}};
    std::optional<RootMultiset> roots;
};

std::vector<double> parseNumberList(const std::string& body, const std::string& what) {
    std::vector<double> out;
    const char* s = body.c_str();
    char* end = nullptr;
    while (*s) {
        if (*s == ',' || *s == ' ') { ++s; continue; }
        double v = std::strtod(s, &end);
        if (end == s) throw ParseError("bad number in " + what + " near '" + s + "'");
        if (!std::isfinite(v)) throw ParseError("non-finite value in " + what);
        out.push_back(v);
        s = end;
    }
    if (out.empty()) throw ParseError("empty list in " + what);
    return out;
}

PolySpec parsePoly(std::string spec, const std::string& name) {
    std::string stripped;
    for (char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) stripped.push_back(ch);
    auto bracketed = [&](const std::string& prefix) -> std::optional<std::string> {
        if (stripped.rfind(prefix, 0) != 0) return std::nullopt;
        if (stripped.back() != ']') throw ParseError(name + ": missing closing ']'");
        return stripped.substr(prefix.size(), stripped.size() - prefix.size() - 1);
    };
    if (auto body = bracketed("coeffs=[")) {
        PolySpec ps;
        ps.poly = RealPolynomial(parseNumberList(*body, name + " coeffs"));
        return ps;
    }
    if (auto body = bracketed("roots=[")) {
        std::vector<RootEntry> entries;
        const std::string& b = *body;
        std::size_t i = 0;
        while (i < b.size()) {
            if (b[i] == ',') { ++i; continue; }
            if (b[i] != '(') throw ParseError(name + ": expected '(' in root list");
            std::size_t close = b.find(')', i);
            if (close == std::string::npos) throw ParseError(name + ": missing ')'");
            std::vector<double> t = parseNumberList(b.substr(i + 1, close - i - 1), name + " root");
            if (t.size() != 2 && t.size() != 3)
                throw ParseError(name + ": roots are (re,im) or (re,im,mult)");
            int mult = t.size() == 3 ? static_cast<int>(t[2]) : 1;
            if (mult < 1 || (t.size() == 3 && t[2] != mult))
                throw ParseError(name + ": multiplicity must be a positive integer");
            entries.push_back({Complex(t[0], t[1]), mult});
            i = close + 1;
        }
        if (entries.empty()) throw ParseError(name + ": empty root list");
        // complete missing conjugates so the polynomial has real coefficients
        std::vector<RootEntry> completed = entries;
        for (const auto& e : entries) {
            if (e.root.imag() == 0.0) continue;
            bool found = false;
            for (const auto& o : entries)
                if (std::abs(o.root - std::conj(e.root)) <= 1e-12 * (1.0 + std::abs(e.root)))
                    found = true;
            if (!found) completed.push_back({std::conj(e.root), e.multiplicity});
        }
        PolySpec ps;
        ps.roots = RootMultiset(completed, 1.0);
        ps.poly = ps.roots->expand();
        return ps;
    }
    throw ParseError(name + ": spec must be coeffs=[...] or roots=[...]");
}

json requestEcho(const std::string& command, const Options& o, bool withPolys = true) {
    json r;
    r["command"] = command;
    if (withPolys) {
        r["q"] = o.q;
        r["p"] = o.p;
    } else {
        r["c"] = o.c;
    }
    r["grid"] = o.grid;
    r["maxOrder"] = o.maxOrder;
    r["tol"] = o.tol;
    r["seed"] = o.seed;
    r["format"] = o.format;
    return r;
}

json signJson(const SignCertificate& s) {
    json j;
    j["kind"] = s.kind == CertKind::NegativityWitness ? "NegativityWitness" : "PositivityMargin";
    if (s.kind == CertKind::NegativityWitness) {
        j["witnessT"] = s.witnessT;
        j["witnessValue"] = s.witnessValue;
    }
    j["gridSize"] = s.gridSize;
    j["minValue"] = s.minValue;
    j["minLocation"] = s.minLocation;
    j["maxAbsValue"] = s.maxAbsValue;
    return j;
}

json verdictJson(const Verdict& v) {
    json j;
    j["decision"] = to_string(v.decision);
    j["rule"] = v.rule;
    j["boundaryFlag"] = v.boundaryFlag;
    j["scanMargin"] = v.scanMargin;
    j["sign"] = v.sign ? signJson(*v.sign) : json(nullptr);
    if (v.fdViolation) {
        json f;
        f["m"] = v.fdViolation->m;
        f["n"] = v.fdViolation->n;
        f["value"] = static_cast<double>(v.fdViolation->value);
        f["tol"] = static_cast<double>(v.fdViolation->tol);
        j["fdViolation"] = f;
    } else {
        j["fdViolation"] = nullptr;
    }
    json audit;
    audit["passed"] = v.fdAuditPassed;
    audit["order"] = v.fdAuditOrder;
    j["fdAudit"] = audit;
    j["divdiffValues"] = v.divdiffValues.empty() ? json(nullptr) : json(v.divdiffValues);
    j["gAt2Pi"] = v.gAt2Pi ? json(*v.gAt2Pi) : json(nullptr);
    return j;
}

Budget makeBudget(const Options& o) {
    Budget b;
    b.gridSize = o.grid;
    b.maxOrder = o.maxOrder;
    b.maxOffset = o.maxOrder;
    b.quadTol = o.tol;
    b.seed = o.seed;
    return b;
}

int exitCode(Decision d) {
    switch (d) {
        case Decision::Moment: return 0;
        case Decision::NotMoment: return 3;
        case Decision::Undetermined: return 4;
    }
    return 1;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ParseError("cannot open output file " + o.out);
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
}

RootMultiset polyRoots(const PolySpec& ps) {
    return ps.roots ? *ps.roots : find_roots(ps.poly);
}

// uniform t grid on (0,1] for plot output, largest t first
std::vector<double> plotGrid(int n) {
    if (n < 1) throw ParseError("--grid must be positive");
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = static_cast<double>(n - i) / n;
    return ts;
}

int cmdDecompose(const Options& o) {
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    RootMultiset roots = polyRoots(ps);
    PfdTable tab = decompose(qs.poly, roots);
    if (o.format == "csv") {
        std::string s = "pole_re,pole_im,order,A_re,A_im\n";
        char line[256];
        for (const auto& t : tab.terms) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%d,%.17g,%.17g\n", t.pole.real(),
                          t.pole.imag(), t.order, t.A.real(), t.A.imag());
            s += line;
        }
        emit(o, s);
        return 0;
    }
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("decompose", o);
    json terms = json::array();
    for (const auto& t : tab.terms) {
        json e;
        e["pole"] = {{"re", t.pole.real()}, {"im", t.pole.imag()}};
        e["order"] = t.order;
        e["A"] = {{"re", t.A.real()}, {"im", t.A.imag()}};
        terms.push_back(e);
    }
    rep["terms"] = terms;
    rep["leadingCoeff"] = roots.leadingCoeff();
    emit(o, rep.dump(2) + "\n");
    return 0;
}

int cmdWeight(const Options& o) {
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    WeightFunction w(qs.poly, polyRoots(ps));
    std::vector<double> ts = plotGrid(o.grid);
    if (o.format == "csv") {
        std::string s = "t,w\n";
        char line[128];
        for (double t : ts) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, w(t));
            s += line;
        }
        emit(o, s);
        return 0;
    }
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("weight", o);
    json grid = json::array();
    for (double t : ts) grid.push_back({{"t", t}, {"w", w(t)}});
    rep["grid"] = grid;
    SignCertificate cert = w.sign_scan(std::max(o.grid, 1000));
    rep["scan"] = signJson(cert);
    emit(o, rep.dump(2) + "\n");
    return 0;
}

int cmdClassify(const Options& o) {
    if (o.format == "csv") throw ParseError("classify supports only --format json");
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    Verdict v = decide(qs.poly, polyRoots(ps), makeBudget(o));
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("classify", o);
    rep["verdict"] = verdictJson(v);
    emit(o, rep.dump(2) + "\n");
    return exitCode(v.decision);
}

int cmdMoments(const Options& o) {
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    WeightFunction w(qs.poly, polyRoots(ps));
    std::vector<MomentReport> rows;
    for (int n = 0; n <= o.maxOrder; ++n) rows.push_back(w.moment(n));
    if (o.format == "csv") {
        std::string s = "n,claimed,integrated,relError\n";
        char line[160];
        for (const auto& r : rows) {
            std::snprintf(line, sizeof line, "%lld,%.17g,%.17g,%.3g\n",
                          static_cast<long long>(r.n), static_cast<double>(r.claimed),
                          static_cast<double>(r.integrated), r.relError);
            s += line;
        }
        emit(o, s);
        return 0;
    }
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("moments", o);
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"n", r.n},
                         {"claimed", static_cast<double>(r.claimed)},
                         {"integrated", static_cast<double>(r.integrated)},
                         {"relError", r.relError}});
    rep["moments"] = table;
    emit(o, rep.dump(2) + "\n");
    return 0;
}

int cmdDivdiff(const Options& o) {
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    RootMultiset roots = polyRoots(ps);
    std::vector<double> ts = plotGrid(o.grid);
    if (o.format == "csv") {
        std::string s = "t,w\n";
        char line[128];
        for (double t : ts) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", t,
                          weight_via_divdiff(qs.poly, roots, t));
            s += line;
        }
        emit(o, s);
        return 0;
    }
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("divdiff", o);
    json grid = json::array();
    for (double t : ts) grid.push_back({{"t", t}, {"w", weight_via_divdiff(qs.poly, roots, t)}});
    rep["grid"] = grid;
    // the positivity shortcut applies only to simple real poles
    bool simpleReal = roots.allReal();
    for (const auto& e : roots.entries())
        if (e.multiplicity != 1) simpleReal = false;
    if (simpleReal && !qs.poly.isZero() && qs.poly.degree() < roots.degree()) {
        SufficientConditionResult sc = sufficient_condition(qs.poly, roots);
        rep["sufficient"] = {{"values", sc.values}, {"allNonnegative", sc.allNonnegative}};
    } else {
        rep["sufficient"] = nullptr;
    }
    emit(o, rep.dump(2) + "\n");
    return 0;
}

int cmdConvolve(const Options& o) {
    PolySpec qs = parsePoly(o.q, "--q"), ps = parsePoly(o.p, "--p");
    if (!qs.poly.isConstant() || qs.poly.coeffs()[0] != 1.0)
        throw ParseError("convolve requires q = coeffs=[1]");
    RootMultiset roots = polyRoots(ps);
    std::vector<double> ts = plotGrid(o.grid);
    std::vector<double> ws = weight_via_convolution(roots, ts);
    if (o.format == "csv") {
        std::string s = "t,w\n";
        char line[128];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", ts[i], ws[i]);
            s += line;
        }
        emit(o, s);
        return 0;
    }
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("convolve", o);
    json grid = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) grid.push_back({{"t", ts[i]}, {"w", ws[i]}});
    rep["grid"] = grid;
    emit(o, rep.dump(2) + "\n");
    return 0;
}

int cmdCounterexample(const Options& o) {
    if (o.format == "csv") throw ParseError("counterexample supports only --format json");
    Verdict v = misra_counterexample(o.c, makeBudget(o));
    RealPolynomial pc = faulhaber_partial_sum(o.c, 6);
    json rep;
    rep["schema"] = 1;
    rep["request"] = requestEcho("counterexample", o, false);
    rep["partialSumPolynomial"] = pc.coeffs();
    json rootList = json::array();
    for (const auto& e : find_roots(pc).entries())
        rootList.push_back(
            {{"re", e.root.real()}, {"im", e.root.imag()}, {"multiplicity", e.multiplicity}});
    rep["roots"] = rootList;
    rep["verdict"] = verdictJson(v);
    emit(o, rep.dump(2) + "\n");
    return exitCode(v.decision);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-sequence analysis of rational sequences q(n)/p(n)"};
    app.require_subcommand(1);
    Options o;

    auto addCommon = [&](CLI::App* sub, bool needsP) {
        sub->add_option("--q", o.q, "numerator spec, coeffs=[...] or roots=[...]");
        auto* popt = sub->add_option("--p", o.p, "denominator spec, coeffs=[...] or roots=[...]");
        if (needsP) popt->required();
        sub->add_option("--grid", o.grid, "grid size for scans and plot output");
        sub->add_option("--max-order", o.maxOrder, "finite-difference order / largest moment n");
        sub->add_option("--tol", o.tol, "quadrature relative tolerance");
        sub->add_option("--seed", o.seed, "RNG seed for stochastic checks");
        sub->add_option("--format", o.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", o.out, "write the report to a file instead of stdout");
    };

    auto* cDecompose = app.add_subcommand("decompose", "partial fraction table of q/p");
    addCommon(cDecompose, true);
    auto* cWeight = app.add_subcommand("weight", "weight function samples and sign scan");
    addCommon(cWeight, true);
    auto* cClassify = app.add_subcommand("classify", "moment-sequence verdict for q(n)/p(n)");
    addCommon(cClassify, true);
    auto* cMoments = app.add_subcommand("moments", "quadrature check of the moment identity");
    addCommon(cMoments, true);
    auto* cDivdiff = app.add_subcommand("divdiff", "divided-difference route and tableau");
    addCommon(cDivdiff, true);
    auto* cConvolve = app.add_subcommand("convolve", "convolution route for q = 1");
    addCommon(cConvolve, true);
    auto* cCounter = app.add_subcommand("counterexample", "partial-sum kernel pipeline");
    addCommon(cCounter, false);
    cCounter->add_option("--c", o.c, "kernel shift parameter, coefficients (n+c)^6");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto t0 = std::chrono::steady_clock::now();
    int rc = 1;
    try {
        if (cDecompose->parsed()) rc = cmdDecompose(o);
        else if (cWeight->parsed()) rc = cmdWeight(o);
        else if (cClassify->parsed()) rc = cmdClassify(o);
        else if (cMoments->parsed()) rc = cmdMoments(o);
        else if (cDivdiff->parsed()) rc = cmdDivdiff(o);
        else if (cConvolve->parsed()) rc = cmdConvolve(o);
        else if (cCounter->parsed()) rc = cmdCounterexample(o);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
    std::fprintf(stderr, "elapsed_ms=%.1f\n", dt.count());
    return rc;
}
