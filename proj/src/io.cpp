#include "npk/io.hpp"

#include <fstream>
#include <sstream>

namespace npk::io {

namespace {

json point_json(const NodePoint& p) {
    json j;
    j["re"] = p.exact ? p.re.to_string() : decimal(p.re_e.lo());
    j["im"] = p.exact ? p.im.to_string() : decimal(p.im_e.lo());
    j["exact"] = p.exact;
    if (p.gen_index >= 0) j["gen_index"] = p.gen_index;
    return j;
}

json enc_json(const Enclosure& e) {
    return json{{"lo", decimal(e.lo())}, {"hi", decimal(e.hi())}};
}

const char* provenance_name(Provenance::Kind k) {
    switch (k) {
        case Provenance::Kind::RadialPower: return "radial";
        case Provenance::Kind::Geometric: return "geometric";
        default: return "explicit";
    }
}

}  // namespace

std::string decimal(const MpF& x) {
    // ceil(prec * log10(2)) + 2 guard digits
    size_t digits = static_cast<size_t>(x.prec() * 0.30103) + 3;
    return x.to_string(digits);
}

json to_json(const NodeSequence& seq) {
    json j;
    j["schema_version"] = schema_version;
    json prov;
    prov["kind"] = provenance_name(seq.provenance.kind);
    if (seq.provenance.kind != Provenance::Kind::Explicit) {
        prov["param"] = seq.provenance.param.to_string();
        prov["start_index"] = seq.provenance.start_index;
        prov["count"] = seq.size();
    }
    j["provenance"] = std::move(prov);
    json pts = json::array();
    for (const auto& p : seq.points) pts.push_back(point_json(p));
    j["points"] = std::move(pts);
    return j;
}

NodeSequence nodes_from_json(const json& j, const PrecisionContext& ctx) {
    const json& prov = j.at("provenance");
    std::string kind = prov.at("kind").get<std::string>();
    if (kind == "radial")
        return gen_radial_power(Rational::parse(prov.at("param").get<std::string>()),
                                prov.at("count").get<long>(), ctx);
    if (kind == "geometric")
        return gen_geometric(Rational::parse(prov.at("param").get<std::string>()),
                             prov.at("count").get<long>(), ctx);
    if (kind != "explicit") throw InvalidParameter("nodes_from_json: unknown provenance " + kind);
    std::vector<NodePoint> pts;
    for (const auto& pj : j.at("points")) {
        if (!pj.value("exact", true))
            throw InvalidParameter("nodes_from_json: explicit sequences must have exact points");
        pts.push_back(NodePoint::from_rational(Rational::parse(pj.at("re").get<std::string>()),
                                               Rational::parse(pj.at("im").get<std::string>()),
                                               ctx.bits));
    }
    return make_explicit(std::move(pts));
}

json to_json(const MomentSequence& m) {
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = MomentSequence::kind_name(m.kind);
    j["count"] = m.count;
    if (m.kind == MomentSequence::Kind::Explicit) {
        json v = json::array();
        for (const auto& q : m.values_q) v.push_back(q.to_string());
        j["values"] = std::move(v);
    }
    return j;
}

MomentSequence moments_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    long count = j.at("count").get<long>();
    if (kind == "factorial") return moment_generator(MomentSequence::Kind::Factorial, count);
    if (kind == "gaussian") return moment_generator(MomentSequence::Kind::Gaussian, count);
    if (kind == "lognormal") return moment_generator(MomentSequence::Kind::Lognormal, count);
    if (kind != "explicit") throw InvalidParameter("moments_from_json: unknown kind " + kind);
    MomentSequence m;
    m.kind = MomentSequence::Kind::Explicit;
    m.count = count;
    for (const auto& v : j.at("values")) m.values_q.push_back(Rational::parse(v.get<std::string>()));
    if (static_cast<long>(m.values_q.size()) != count)
        throw InvalidParameter("moments_from_json: count does not match values");
    return m;
}

json to_json(const DiscreteMeasure& mu) {
    json j;
    j["schema_version"] = schema_version;
    json atoms = json::array();
    for (const auto& a : mu.atoms) {
        json aj;
        aj["point"] = point_json(a.point);
        aj["mass_lo"] = a.exact_mass ? a.mass_q.to_string() : decimal(a.mass.lo());
        aj["mass_hi"] = a.exact_mass ? a.mass_q.to_string() : decimal(a.mass.hi());
        atoms.push_back(std::move(aj));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

json to_json(const PolarMeasure& mu) {
    json j;
    j["schema_version"] = schema_version;
    json atoms = json::array();
    for (const auto& a : mu.atoms) {
        if (!a.exact) throw InvalidParameter("polar measure serialization requires exact atoms");
        atoms.push_back(json{{"r", a.r_q.to_string()},
                             {"t", a.t_q.to_string()},
                             {"m", a.m_q.to_string()}});
    }
    j["atoms"] = std::move(atoms);
    return j;
}

PolarMeasure polar_from_json(const json& j, long bits) {
    PolarMeasure mu;
    for (const auto& aj : j.at("atoms"))
        mu.atoms.push_back(polar_atom_exact(Rational::parse(aj.at("r").get<std::string>()),
                                            Rational::parse(aj.at("t").get<std::string>()),
                                            Rational::parse(aj.at("m").get<std::string>()), bits));
    return mu;
}

json to_json(const BoxConstantReport& rep) {
    json j;
    j["schema_version"] = schema_version;
    j["constant"] = enc_json(rep.constant);
    j["exact"] = rep.exact;
    if (rep.exact) j["constant_exact"] = rep.constant_q.to_string();
    j["witness"] = json{{"phi_t", rep.witness.phi_t.to_string()},
                        {"eps", rep.witness.eps.to_string()},
                        {"atoms", rep.atom_count_in_witness}};
    return j;
}

json to_json(const Trajectory& t) {
    json j;
    j["schema_version"] = schema_version;
    json recs = json::array();
    for (const auto& r : t.records) {
        json rj;
        rj["n"] = r.n;
        if (r.lambda0.dim > 0) {
            rj["lambda0"] = enc_json(r.lambda0.value);
            rj["bits_used"] = r.lambda0.bits_used;
        }
        if (!r.aux.empty()) {
            json aux;
            for (const auto& [k, v] : r.aux) aux[k] = enc_json(v);
            rj["aux"] = std::move(aux);
        }
        recs.push_back(std::move(rj));
    }
    j["records"] = std::move(recs);
    return j;
}

std::string to_csv(const Trajectory& t) {
    std::ostringstream out;
    out << "n,lambda0_lo,lambda0_hi,bits_used";
    if (!t.records.empty())
        for (const auto& [k, v] : t.records.front().aux) {
            if (v.is_point())
                out << "," << k;
            else
                out << "," << k << "_lo," << k << "_hi";
        }
    out << "\n";
    for (const auto& r : t.records) {
        out << r.n << ",";
        if (r.lambda0.dim > 0)
            out << decimal(r.lambda0.value.lo()) << "," << decimal(r.lambda0.value.hi()) << ","
                << r.lambda0.bits_used;
        else
            out << ",,";
        for (const auto& [k, v] : r.aux) {
            if (v.is_point())
                out << "," << decimal(v.lo());
            else
                out << "," << decimal(v.lo()) << "," << decimal(v.hi());
        }
        out << "\n";
    }
    return out.str();
}

json to_json(const HermitianKernelMatrix& m, long bits) {
    json j;
    j["schema_version"] = schema_version;
    switch (m.recipe) {
        case Recipe::Pick: j["recipe"] = "pick"; break;
        case Recipe::PickGeneral: j["recipe"] = "pick_general"; break;
        case Recipe::NormalizedGram: j["recipe"] = "normalized_gram"; break;
        case Recipe::Hankel: j["recipe"] = "hankel"; break;
    }
    j["n"] = m.n;
    j["real"] = m.is_real;
    j["exact"] = m.is_exact;
    json rows = json::array();
    if (m.is_real) {
        MatE a = m.real_at(bits);
        for (long i = 0; i < a.rows(); ++i) {
            json row = json::array();
            for (long c = 0; c < a.cols(); ++c) row.push_back(enc_json(a(i, c)));
            rows.push_back(std::move(row));
        }
    } else {
        MatCE a = m.cx_at(bits);
        for (long i = 0; i < a.rows(); ++i) {
            json row = json::array();
            for (long c = 0; c < a.cols(); ++c)
                row.push_back(json{{"re", enc_json(a(i, c).re)}, {"im", enc_json(a(i, c).im)}});
            rows.push_back(std::move(row));
        }
    }
    j["entries"] = std::move(rows);
    return j;
}

std::string to_csv(const MatE& m) {
    std::ostringstream out;
    for (long i = 0; i < m.rows(); ++i) {
        for (long c = 0; c < m.cols(); ++c) {
            if (c) out << ",";
            out << decimal(m(i, c).lo()) << "," << decimal(m(i, c).hi());
        }
        out << "\n";
    }
    return out.str();
}

json manifest(const std::vector<std::string>& argv) {
    json j;
    j["schema_version"] = schema_version;
    j["tool"] = "npk";
    j["tool_version"] = tool_version;
    j["argv"] = argv;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot open for writing: " + path);
    f << text;
    if (!f) throw InvalidParameter("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace npk::io
