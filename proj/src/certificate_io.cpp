#include "tg/certificate_io.hpp"

#include <sstream>

namespace tg {

namespace {

// --- element descriptors ----------------------------------------------------

std::string desc_to_string(const ElementDesc& d) {
    auto join = [](const std::vector<i64>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v[i]);
        }
        return s;
    };
    switch (d.kind) {
        case ElementDesc::Kind::Matrix: return "mat(" + join(d.data) + ")";
        case ElementDesc::Kind::Perm: return "perm(" + join(d.data) + ")";
        case ElementDesc::Kind::Residue: return "res(" + join(d.data) + ")";
        case ElementDesc::Kind::Dihedral: return "dih(" + join(d.data) + ")";
        case ElementDesc::Kind::Vec3: return "vec(" + join(d.data) + ")";
        case ElementDesc::Kind::Tuple: {
            std::string s = "tup(";
            for (std::size_t i = 0; i < d.sub.size(); ++i) {
                if (i) s += ";";
                s += desc_to_string(d.sub[i]);
            }
            return s + ")";
        }
    }
    throw std::logic_error("desc_to_string: bad kind");
}

// Recursive-descent helpers over a string cursor.
struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char take() { return pos < s.size() ? s[pos++] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' at offset " +
                             std::to_string(pos) + " in: " + s);
    }
    std::string ident() {
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') out += take();
        return out;
    }
    i64 integer() {
        std::string out;
        if (peek() == '-') out += take();
        while (std::isdigit(static_cast<unsigned char>(peek()))) out += take();
        if (out.empty() || out == "-") throw ParseError("expected integer in: " + s);
        return std::stoll(out);
    }
};

std::vector<i64> parse_int_list(Cursor& c) {
    std::vector<i64> v;
    if (c.peek() == ')') return v;
    v.push_back(c.integer());
    while (c.eat(',')) v.push_back(c.integer());
    return v;
}

ElementDesc parse_desc(Cursor& c) {
    const std::string tag = c.ident();
    c.expect('(');
    ElementDesc d;
    if (tag == "tup") {
        d.kind = ElementDesc::Kind::Tuple;
        d.sub.push_back(parse_desc(c));
        while (c.eat(';')) d.sub.push_back(parse_desc(c));
    } else {
        if (tag == "mat")
            d.kind = ElementDesc::Kind::Matrix;
        else if (tag == "perm")
            d.kind = ElementDesc::Kind::Perm;
        else if (tag == "res")
            d.kind = ElementDesc::Kind::Residue;
        else if (tag == "dih")
            d.kind = ElementDesc::Kind::Dihedral;
        else if (tag == "vec")
            d.kind = ElementDesc::Kind::Vec3;
        else
            throw ParseError("unknown element descriptor: " + tag);
        d.data = parse_int_list(c);
    }
    c.expect(')');
    return d;
}

// --- group specs -------------------------------------------------------------

std::string spec_to_string(const GroupSpec& g) {
    switch (g.kind) {
        case GroupSpec::Kind::Cyclic: return "cyclic(" + std::to_string(g.n) + ")";
        case GroupSpec::Kind::Dihedral: return "dihedral(" + std::to_string(g.n) + ")";
        case GroupSpec::Kind::Alt4: return "alt4";
        case GroupSpec::Kind::Sym4: return "sym4";
        case GroupSpec::Kind::Alt5: return "alt5";
        case GroupSpec::Kind::ElemAbelian3sq: return "c3c3";
        case GroupSpec::Kind::Psl2: return "psl2(" + std::to_string(g.n) + ")";
        case GroupSpec::Kind::DirectProduct: {
            std::string s = "product(";
            for (std::size_t i = 0; i < g.factors.size(); ++i) {
                if (i) s += ";";
                s += spec_to_string(g.factors[i]);
            }
            return s + ")";
        }
        case GroupSpec::Kind::GeneratedSubgroup: {
            std::string s = "subgroup(" + spec_to_string(g.factors.at(0));
            for (const auto& d : g.generators) s += "|" + desc_to_string(d);
            return s + ")";
        }
    }
    throw std::logic_error("spec_to_string: bad kind");
}

GroupSpec parse_spec(Cursor& c) {
    const std::string tag = c.ident();
    if (tag == "alt4") return GroupSpec::alt4();
    if (tag == "sym4") return GroupSpec::sym4();
    if (tag == "alt5") return GroupSpec::alt5();
    if (tag == "c3c3") return GroupSpec::elem_abelian_3sq();
    c.expect('(');
    GroupSpec out;
    if (tag == "cyclic") {
        out = GroupSpec::cyclic(static_cast<u64>(c.integer()));
    } else if (tag == "dihedral") {
        out = GroupSpec::dihedral(static_cast<u64>(c.integer()));
    } else if (tag == "psl2") {
        out = GroupSpec::psl2(static_cast<u64>(c.integer()));
    } else if (tag == "product") {
        std::vector<GroupSpec> fs;
        fs.push_back(parse_spec(c));
        while (c.eat(';')) fs.push_back(parse_spec(c));
        out = GroupSpec::direct_product(std::move(fs));
    } else if (tag == "subgroup") {
        GroupSpec parent = parse_spec(c);
        std::vector<ElementDesc> gens;
        while (c.eat('|')) gens.push_back(parse_desc(c));
        out = GroupSpec::generated_subgroup(std::move(parent), std::move(gens));
    } else {
        throw ParseError("unknown group spec: " + tag);
    }
    c.expect(')');
    return out;
}

// --- line emission -----------------------------------------------------------

void emit_triple(std::ostringstream& os, const std::string& key, const Triple& t) {
    os << key << " " << t.r << " " << t.s << " " << t.t << "\n";
}

void emit_constraints(std::ostringstream& os, const std::vector<ResidueConstraint>& cs) {
    for (const auto& c : cs) {
        os << "constraint " << c.modulus << " allow";
        if (c.allowed.empty())
            os << " -";
        else
            for (u64 r : c.allowed) os << " " << r;
        os << " deny";
        if (c.forbidden.empty())
            os << " -";
        else
            for (u64 r : c.forbidden) os << " " << r;
        os << "\n";
    }
}

void emit_witness(std::ostringstream& os, const EpimorphismWitness& w) {
    os << "witness-x " << desc_to_string(w.x) << "\n";
    os << "witness-y " << desc_to_string(w.y) << "\n";
    os << "witness-orders " << w.order_x << " " << w.order_y << " " << w.order_xy << "\n";
    os << "witness-generating " << (w.generating ? 1 : 0) << "\n";
}

struct Emitter {
    std::ostringstream& os;
    void operator()(const IdenticalCert&) const { os << "kind identical\n"; }
    void operator()(const InvariantMismatchCert& c) const {
        os << "kind invariant-mismatch\n";
        os << "field " << c.field << "\n";
        os << "values " << c.value1 << " " << c.value2 << "\n";
    }
    void operator()(const DihedralWitnessCert& c) const {
        os << "kind dihedral\n";
        os << "m " << c.m << "\n";
        os << "side " << c.side << "\n";
    }
    void operator()(const PslQuotientWitnessCert& c) const {
        os << "kind psl2-quotient\n";
        os << "p " << c.p << "\n";
        os << "quotient-side " << c.quotient_side << "\n";
        os << "split " << c.q1 << " " << c.q2 << " " << c.m1 << " " << c.m2 << "\n";
        emit_constraints(os, c.constraints);
        if (c.witness) emit_witness(os, *c.witness);
        os << "non-quotient ";
        if (c.non_quotient.kind == NonQuotientEvidence::Kind::OrderGap)
            os << "order-gap " << c.non_quotient.entry << "\n";
        else
            os << "oracle-false\n";
    }
    void operator()(const SuppressionWitnessCert& c) const {
        os << "kind suppression\n";
        os << "q " << c.q << "\n";
        os << "q-side " << c.q_side << "\n";
        os << "reduced " << c.reduced[0] << " " << c.reduced[1] << " " << c.reduced[2] << "\n";
        os << "group " << spec_to_string(c.group) << "\n";
        emit_constraints(os, c.constraints);
        os << "extended-scope " << (c.extended_scope ? 1 : 0) << "\n";
    }
    void operator()(const SmoothGenerationWitnessCert& c) const {
        os << "kind smooth-generation\n";
        os << "group " << spec_to_string(c.group) << "\n";
        os << "smooth-side " << c.smooth_side << "\n";
        os << "blocked " << c.blocked << "\n";
        os << "qq " << c.q1 << " " << c.q2 << "\n";
        os << "split1 " << c.split1[0] << " " << c.split1[1] << " " << c.split1[2] << "\n";
        os << "split2 " << c.split2[0] << " " << c.split2[1] << " " << c.split2[2] << "\n";
        os << "primes";
        for (u64 p : c.primes) os << " " << p;
        os << "\n";
        emit_constraints(os, c.constraints);
        os << "basis same-smooth-quotient-sets\n";
    }
    void operator()(const UnresolvedCert& c) const {
        os << "kind unresolved\n";
        os << "stages";
        for (const auto& s : c.stages_attempted) os << " " << s;
        os << "\n";
    }
};

}  // namespace

std::string group_spec_to_string(const GroupSpec& g) { return spec_to_string(g); }

GroupSpec group_spec_from_string(const std::string& s) {
    Cursor c{s};
    GroupSpec g = parse_spec(c);
    if (c.pos != s.size()) throw ParseError("trailing characters in group spec: " + s);
    return g;
}

std::string serialize_certificate(const Certificate& c, const Triple& t1, const Triple& t2) {
    std::ostringstream os;
    os << "tgq-certificate v1\n";
    emit_triple(os, "left", t1);
    emit_triple(os, "right", t2);
    std::visit(Emitter{os}, c);
    os << "end\n";
    return os.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

i64 to_int(const std::string& w) {
    try {
        std::size_t used = 0;
        const i64 v = std::stoll(w, &used);
        if (used != w.size()) throw ParseError("bad integer: " + w);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer: " + w);
    }
}

struct LineReader {
    std::vector<std::vector<std::string>> lines;
    std::size_t pos = 0;

    explicit LineReader(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            auto words = split_words(line);
            if (words.empty() || words[0][0] == '#') continue;  // comment lines
            lines.push_back(std::move(words));
        }
    }
    bool done() const { return pos >= lines.size(); }
    const std::vector<std::string>& peek() const {
        if (done()) throw ParseError("unexpected end of certificate");
        return lines[pos];
    }
    std::vector<std::string> take() {
        auto v = peek();
        ++pos;
        return v;
    }
    std::vector<std::string> take_key(const std::string& key, std::size_t min_words) {
        auto v = take();
        if (v[0] != key) throw ParseError("expected '" + key + "', got '" + v[0] + "'");
        if (v.size() < min_words)
            throw ParseError("short '" + key + "' line");
        return v;
    }
};

std::vector<ResidueConstraint> parse_constraints(LineReader& r) {
    std::vector<ResidueConstraint> cs;
    while (!r.done() && r.peek()[0] == "constraint") {
        const auto w = r.take();
        ResidueConstraint c;
        c.modulus = static_cast<u64>(to_int(w.at(1)));
        std::size_t i = 2;
        if (w.at(i) != "allow") throw ParseError("constraint: expected 'allow'");
        ++i;
        for (; i < w.size() && w[i] != "deny"; ++i)
            if (w[i] != "-") c.allowed.push_back(static_cast<u64>(to_int(w[i])));
        if (i >= w.size()) throw ParseError("constraint: expected 'deny'");
        ++i;
        for (; i < w.size(); ++i)
            if (w[i] != "-") c.forbidden.push_back(static_cast<u64>(to_int(w[i])));
        cs.push_back(std::move(c));
    }
    return cs;
}

std::optional<EpimorphismWitness> parse_witness(LineReader& r, const GroupSpec& spec) {
    if (r.done() || r.peek()[0] != "witness-x") return std::nullopt;
    EpimorphismWitness w;
    w.spec = spec;
    {
        const auto v = r.take_key("witness-x", 2);
        Cursor c{v[1]};
        w.x = parse_desc(c);
    }
    {
        const auto v = r.take_key("witness-y", 2);
        Cursor c{v[1]};
        w.y = parse_desc(c);
    }
    {
        const auto v = r.take_key("witness-orders", 4);
        w.order_x = static_cast<u64>(to_int(v[1]));
        w.order_y = static_cast<u64>(to_int(v[2]));
        w.order_xy = static_cast<u64>(to_int(v[3]));
    }
    {
        const auto v = r.take_key("witness-generating", 2);
        w.generating = to_int(v[1]) != 0;
    }
    return w;
}

}  // namespace

ParsedCertificate parse_certificate(const std::string& text) {
    LineReader r(text);
    {
        const auto v = r.take();
        if (v.size() != 2 || v[0] != "tgq-certificate" || v[1] != "v1")
            throw ParseError("missing or unsupported certificate header");
    }
    const auto lw = r.take_key("left", 4);
    const Triple left(to_int(lw[1]), to_int(lw[2]), to_int(lw[3]));
    const auto rw = r.take_key("right", 4);
    const Triple right(to_int(rw[1]), to_int(rw[2]), to_int(rw[3]));

    const auto kw = r.take_key("kind", 2);
    const std::string kind = kw[1];
    Certificate cert{IdenticalCert{}};

    if (kind == "identical") {
        cert = IdenticalCert{};
    } else if (kind == "invariant-mismatch") {
        InvariantMismatchCert c;
        c.field = r.take_key("field", 2)[1];
        const auto v = r.take_key("values", 3);
        c.value1 = to_int(v[1]);
        c.value2 = to_int(v[2]);
        cert = c;
    } else if (kind == "dihedral") {
        DihedralWitnessCert c;
        c.m = static_cast<u64>(to_int(r.take_key("m", 2)[1]));
        c.side = static_cast<int>(to_int(r.take_key("side", 2)[1]));
        cert = c;
    } else if (kind == "psl2-quotient") {
        PslQuotientWitnessCert c;
        c.p = static_cast<u64>(to_int(r.take_key("p", 2)[1]));
        c.quotient_side = static_cast<int>(to_int(r.take_key("quotient-side", 2)[1]));
        const auto sp = r.take_key("split", 5);
        c.q1 = to_int(sp[1]);
        c.q2 = to_int(sp[2]);
        c.m1 = to_int(sp[3]);
        c.m2 = to_int(sp[4]);
        c.constraints = parse_constraints(r);
        c.witness = parse_witness(r, GroupSpec::psl2(c.p));
        const auto nq = r.take_key("non-quotient", 2);
        if (nq[1] == "order-gap") {
            if (nq.size() < 3) throw ParseError("order-gap needs an entry");
            c.non_quotient = {NonQuotientEvidence::Kind::OrderGap, to_int(nq[2])};
        } else if (nq[1] == "oracle-false") {
            c.non_quotient = {NonQuotientEvidence::Kind::OracleFalse, 0};
        } else {
            throw ParseError("unknown non-quotient evidence: " + nq[1]);
        }
        cert = c;
    } else if (kind == "suppression") {
        SuppressionWitnessCert c;
        c.q = to_int(r.take_key("q", 2)[1]);
        c.q_side = static_cast<int>(to_int(r.take_key("q-side", 2)[1]));
        const auto red = r.take_key("reduced", 4);
        c.reduced = {to_int(red[1]), to_int(red[2]), to_int(red[3])};
        c.group = group_spec_from_string(r.take_key("group", 2)[1]);
        c.constraints = parse_constraints(r);
        c.extended_scope = to_int(r.take_key("extended-scope", 2)[1]) != 0;
        cert = c;
    } else if (kind == "smooth-generation") {
        SmoothGenerationWitnessCert c;
        c.group = group_spec_from_string(r.take_key("group", 2)[1]);
        c.smooth_side = static_cast<int>(to_int(r.take_key("smooth-side", 2)[1]));
        c.blocked = static_cast<u64>(to_int(r.take_key("blocked", 2)[1]));
        const auto qq = r.take_key("qq", 3);
        c.q1 = to_int(qq[1]);
        c.q2 = to_int(qq[2]);
        const auto s1 = r.take_key("split1", 4);
        c.split1 = {to_int(s1[1]), to_int(s1[2]), to_int(s1[3])};
        const auto s2 = r.take_key("split2", 4);
        c.split2 = {to_int(s2[1]), to_int(s2[2]), to_int(s2[3])};
        const auto pr = r.take_key("primes", 2);
        for (std::size_t i = 1; i < pr.size(); ++i)
            c.primes.push_back(static_cast<u64>(to_int(pr[i])));
        c.constraints = parse_constraints(r);
        const auto basis = r.take_key("basis", 2);
        if (basis[1] != "same-smooth-quotient-sets")
            throw ParseError("unknown smooth-generation basis: " + basis[1]);
        cert = c;
    } else if (kind == "unresolved") {
        UnresolvedCert c;
        const auto v = r.take_key("stages", 1);
        for (std::size_t i = 1; i < v.size(); ++i) c.stages_attempted.push_back(v[i]);
        cert = c;
    } else {
        throw ParseError("unknown certificate kind: " + kind);
    }

    const auto endw = r.take();
    if (endw[0] != "end") throw ParseError("expected 'end'");
    return ParsedCertificate{left, right, cert};
}

namespace {

struct Describer {
    std::ostringstream& os;
    const Triple& t1;
    const Triple& t2;

    std::string side_str(int side) const { return (side == 1 ? t1 : t2).str(); }

    void operator()(const IdenticalCert&) const {
        os << "the triples are identical, so the triangle groups coincide\n";
    }
    void operator()(const InvariantMismatchCert& c) const {
        os << "invariant '" << c.field << "' differs: " << c.value1 << " vs " << c.value2 << "\n";
    }
    void operator()(const DihedralWitnessCert& c) const {
        os << "the dihedral group D" << c.m << " (order " << 2 * c.m << ") is a quotient of "
           << side_str(c.side) << " but not of " << side_str(3 - c.side) << "\n";
    }
    void operator()(const PslQuotientWitnessCert& c) const {
        os << "PSL(2," << c.p << ") is a smooth quotient of " << side_str(c.quotient_side)
           << " but not a quotient of " << side_str(3 - c.quotient_side) << "\n";
        os << "  L2 split: " << c.q1 << " and " << c.q2 << " lie in members " << c.m1 << ", "
           << c.m2 << " on one side and share a member on the other\n";
        if (c.non_quotient.kind == NonQuotientEvidence::Kind::OrderGap)
            os << "  non-quotient proof: no nontrivial element order divides entry "
               << c.non_quotient.entry << ", forcing a cyclic image\n";
        else
            os << "  non-quotient proof: exhaustive search over the realized group\n";
    }
    void operator()(const SuppressionWitnessCert& c) const {
        os << "suppressing q = " << c.q << " from " << side_str(3 - c.q_side) << " leaves ("
           << c.reduced[0] << "," << c.reduced[1] << "," << c.reduced[2] << "); the group "
           << c.group.str() << " is a quotient of " << side_str(3 - c.q_side) << " but not of "
           << side_str(c.q_side) << " (no nontrivial element of order dividing " << c.q << ")";
        if (c.extended_scope) os << " [extended scope: composite q]";
        os << "\n";
    }
    void operator()(const SmoothGenerationWitnessCert& c) const {
        os << c.group.str() << " is smoothly generated for " << side_str(c.smooth_side)
           << " yet has no element of order " << c.blocked << " = " << c.q1 << "*" << c.q2
           << ", which divides the other side; the two groups therefore differ in their sets of"
              " smoothly generated quotients, hence in their finite quotients\n";
        if (!(c.split2 == std::array<i64, 3>{1, 1, 1}))
            os << "  divisor split: (" << c.split1[0] << "," << c.split1[1] << "," << c.split1[2]
               << ") and (" << c.split2[0] << "," << c.split2[1] << "," << c.split2[2] << ")\n";
    }
    void operator()(const UnresolvedCert& c) const {
        os << "unresolved after stages:";
        for (const auto& s : c.stages_attempted) os << " " << s;
        os << "\n";
    }
};

}  // namespace

std::string describe_certificate(const Certificate& c, const Triple& t1, const Triple& t2) {
    std::ostringstream os;
    os << "pair " << t1.str() << " vs " << t2.str() << "\n";
    std::visit(Describer{os, t1, t2}, c);
    return os.str();
}

}  // namespace tg
