#include "gammalab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gammalab::io {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

// Shortest round-trip formatting, stable across runs.
std::string fmt(double v) {
    json j = v;
    return j.dump();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex value must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const int rows = static_cast<int>(j.size());
    int cols = -1;
    std::vector<Complex> data;
    for (const json& row : j) {
        if (!row.is_array()) throw ParseError("matrix row must be an array");
        if (cols < 0)
            cols = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != cols)
            throw ParseError("ragged matrix rows");
        for (const json& z : row) data.push_back(complex_from_json(z));
    }
    if (rows == 0) throw ParseError("empty matrix");
    try {
        return CMatrix(rows, cols, std::move(data));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json gamma_point_to_json(const geom::GammaPoint& x) {
    json s = json::array();
    for (const Complex& z : x.s) s.push_back(complex_to_json(z));
    return json{{"n", x.n}, {"s", std::move(s)}, {"p", complex_to_json(x.p)}};
}

geom::GammaPoint gamma_point_from_json(const json& j) {
    const json& s = field(j, "s");
    if (!s.is_array()) throw ParseError("\"s\" must be an array");
    std::vector<Complex> sv;
    for (const json& z : s) sv.push_back(complex_from_json(z));
    geom::GammaPoint x = geom::make_gamma_point(std::move(sv), complex_from_json(field(j, "p")));
    if (j.contains("n") && j.at("n").get<int>() != x.n)
        throw ParseError("field \"n\" disagrees with the length of \"s\"");
    return x;
}

json matrix_tuple_to_json(const spec::MatrixTuple& t) {
    json mats = json::array();
    for (const CMatrix& m : t.mats) mats.push_back(matrix_to_json(m));
    return json{{"order", t.order}, {"matrices", std::move(mats)}};
}

spec::MatrixTuple matrix_tuple_from_json(const json& j) {
    const json& mats = field(j, "matrices");
    if (!mats.is_array() || mats.empty()) throw ParseError("\"matrices\" must be a nonempty array");
    std::vector<CMatrix> ms;
    for (const json& m : mats) ms.push_back(matrix_from_json(m));
    try {
        spec::MatrixTuple t = spec::make_matrix_tuple(std::move(ms));
        if (j.contains("order") && j.at("order").get<int>() != t.order)
            throw ParseError("field \"order\" disagrees with the matrices");
        return t;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json pencil_to_json(const var::PencilFamily& pf) {
    json mats = json::array();
    for (const CMatrix& m : pf.F) mats.push_back(matrix_to_json(m));
    return json{{"n", pf.n}, {"order", pf.d}, {"matrices", std::move(mats)}};
}

var::PencilFamily pencil_from_json(const json& j) {
    const int n = field(j, "n").get<int>();
    const json& mats = field(j, "matrices");
    if (!mats.is_array()) throw ParseError("\"matrices\" must be an array");
    std::vector<CMatrix> ms;
    for (const json& m : mats) ms.push_back(matrix_from_json(m));
    try {
        return var::make_pencil(n, std::move(ms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json operator_tuple_to_json(const op::OperatorTuple& t) {
    json s = json::array();
    for (const CMatrix& m : t.S) s.push_back(matrix_to_json(m));
    return json{{"n", t.n}, {"order", t.m}, {"S", std::move(s)}, {"P", matrix_to_json(t.P)}};
}

op::OperatorTuple operator_tuple_from_json(const json& j) {
    const json& s = field(j, "S");
    if (!s.is_array() || s.empty()) throw ParseError("\"S\" must be a nonempty array");
    std::vector<CMatrix> sv;
    for (const json& m : s) sv.push_back(matrix_from_json(m));
    try {
        return op::make_operator_tuple(std::move(sv), matrix_from_json(field(j, "P")));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json point_class_to_json(const geom::PointClass& pc) {
    json j{{"label", geom::to_string(pc.label)}, {"margin", pc.margin}};
    if (std::isfinite(pc.conditioning))
        j["conditioning"] = pc.conditioning;
    else
        j["conditioning"] = "inf";
    return j;
}

json joint_spectrum_to_json(const spec::JointSpectrum& js) {
    json pts = json::array();
    for (const std::vector<Complex>& p : js.points) {
        json tup = json::array();
        for (const Complex& z : p) tup.push_back(complex_to_json(z));
        pts.push_back(std::move(tup));
    }
    return json{{"points", std::move(pts)},
                {"residuals", js.residuals},
                {"used_staircase", js.used_staircase}};
}

json pencil_report_to_json(const var::PencilReport& rep) {
    json j{{"verdict", var::to_string(rep.verdict)},
           {"condition_i", rep.condition_i},
           {"starred_commutator_defect", rep.starred_commutator_defect},
           {"min_interior_margin", rep.min_interior_margin},
           {"min_margin_location", complex_to_json(rep.min_margin_location)},
           {"monic", rep.monic},
           {"monic_note", rep.monic_note},
           {"worst_boundary_sym_defect", rep.worst_boundary_sym_defect},
           {"boundary_distinguished", rep.boundary_distinguished}};
    if (!rep.witness.empty()) j["witness"] = rep.witness;
    if (rep.witness_z) j["witness_z"] = complex_to_json(*rep.witness_z);
    return j;
}

json variety_sample_to_json(const var::VarietySample& vs) {
    json recs = json::array();
    for (const var::FiberRecord& r : vs.records) {
        json rec{{"p", complex_to_json(r.p)}, {"on_boundary", r.on_boundary}};
        if (!r.error.empty()) {
            rec["error"] = r.error;
        } else {
            json pts = json::array();
            for (size_t k = 0; k < r.points.size(); ++k) {
                json s = json::array();
                for (const Complex& z : r.points[k]) s.push_back(complex_to_json(z));
                pts.push_back(json{{"s", std::move(s)},
                                   {"det_residuals", r.det_residuals[k]},
                                   {"class", geom::to_string(r.classes[k].label)},
                                   {"margin", r.classes[k].margin}});
            }
            rec["fiber"] = std::move(pts);
        }
        recs.push_back(std::move(rec));
    }
    return json{{"n", vs.n},
                {"grid", {{"radii", vs.grid.radii},
                          {"angles", vs.grid.angles},
                          {"include_boundary", vs.grid.include_boundary},
                          {"boundary_eps", vs.grid.boundary_eps}}},
                {"records", std::move(recs)}};
}

json polydisc_points_to_json(const std::vector<var::PolydiscPoint>& pts) {
    json arr = json::array();
    for (const var::PolydiscPoint& p : pts) {
        json z = json::array();
        for (const Complex& zi : p.z) z.push_back(complex_to_json(zi));
        arr.push_back(json{{"z", std::move(z)},
                           {"p", complex_to_json(p.p)},
                           {"max_modulus", p.max_modulus},
                           {"resym_residual", p.resym_residual},
                           {"class", geom::to_string(p.source_class)}});
    }
    return arr;
}

json fo_tuple_to_json(const op::FOTuple& fo) {
    json a = json::array();
    for (const CMatrix& m : fo.A) a.push_back(matrix_to_json(m));
    return json{{"A", std::move(a)},
                {"defect_rank", fo.defect_rank},
                {"residuals", fo.residuals},
                {"omega_max", fo.omega_max},
                {"omega_bound", fo.omega_bound}};
}

json classification_to_json(const op::Classification& c) {
    json j{{"label", op::to_string(c.label)},
           {"purity_spectral_radius", c.purity_spectral_radius},
           {"purity_power_norm", c.purity_power_norm}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (c.label == op::TupleClass::ContractionEvidence || c.label == op::TupleClass::Refuted)
        j["worst_vn_margin"] = c.worst_vn_margin;
    return j;
}

json vn_report_to_json(const vn::VNReport& rep) {
    json trials = json::array();
    for (const vn::VNTrial& t : rep.trials)
        trials.push_back(json{{"trial", t.trial},
                              {"degree", t.degree},
                              {"lhs", t.lhs},
                              {"rhs", t.rhs},
                              {"margin", t.margin},
                              {"verdict", t.holds ? "HOLDS" : "VIOLATION"}});
    json j{{"hypotheses_met", rep.hypotheses_met},
           {"exploratory", rep.exploratory},
           {"min_margin", rep.min_margin},
           {"any_violation", rep.any_violation},
           {"trials", std::move(trials)}};
    if (!rep.hypothesis_note.empty()) j["hypothesis_note"] = rep.hypothesis_note;
    return j;
}

json pushforward_to_json(const inter::PushforwardResult& pr) {
    return json{{"A", matrix_to_json(pr.A)},
                {"omega", pr.omega},
                {"g2_pencil", pencil_to_json(pr.g2_pencil)},
                {"validity", var::to_string(pr.validity)},
                {"match_residual", pr.match_residual}};
}

json counterexample_to_json(const inter::CounterexampleReport& rep) {
    json witness = json::array();
    for (const Complex& c : rep.canonical_witness) witness.push_back(complex_to_json(c));
    json images = json::array();
    for (const inter::CounterexampleRow& row : rep.images)
        images.push_back(json{{"k", row.k},
                              {"omega", complex_to_json(row.omega)},
                              {"s", complex_to_json(row.image_s)},
                              {"p", complex_to_json(row.image_p)},
                              {"label", geom::to_string(row.label)},
                              {"ay_slack", row.ay_slack}});
    return json{{"source", gamma_point_to_json(rep.source)},
                {"canonical_witness", std::move(witness)},
                {"witness_residual", rep.witness_residual},
                {"source_class", point_class_to_json(rep.source_class)},
                {"non_exterior_count", rep.non_exterior_count},
                {"images", std::move(images)}};
}

std::string sample_to_csv(const var::VarietySample& vs) {
    std::ostringstream os;
    os << "re_p,im_p,branch,i,re_s,im_s,class,det_residual\n";
    for (const var::FiberRecord& r : vs.records) {
        if (!r.error.empty()) continue;
        for (size_t b = 0; b < r.points.size(); ++b)
            for (size_t i = 0; i < r.points[b].size(); ++i)
                os << fmt(r.p.real()) << ',' << fmt(r.p.imag()) << ',' << b << ',' << (i + 1)
                   << ',' << fmt(r.points[b][i].real()) << ',' << fmt(r.points[b][i].imag()) << ','
                   << geom::to_string(r.classes[b].label) << ',' << fmt(r.det_residuals[b][i])
                   << '\n';
    }
    return os.str();
}

std::string plot_data_csv(const var::VarietySample& vs) {
    bool any = false;
    for (const var::FiberRecord& r : vs.records)
        if (r.error.empty() && !r.points.empty()) any = true;
    if (!any) throw std::invalid_argument("plot data: empty sample");
    std::ostringstream os;
    os << "re_p,im_p,branch,i,re_s,im_s,class\n";
    for (const var::FiberRecord& r : vs.records) {
        if (!r.error.empty()) continue;
        for (size_t b = 0; b < r.points.size(); ++b)
            for (size_t i = 0; i < r.points[b].size(); ++i)
                os << fmt(r.p.real()) << ',' << fmt(r.p.imag()) << ',' << b << ',' << (i + 1)
                   << ',' << fmt(r.points[b][i].real()) << ',' << fmt(r.points[b][i].imag()) << ','
                   << geom::to_string(r.classes[b].label) << '\n';
    }
    return os.str();
}

std::string vn_trials_csv(const vn::VNReport& rep) {
    std::ostringstream os;
    os << "trial,degree,lhs,rhs,margin,verdict\n";
    for (const vn::VNTrial& t : rep.trials)
        os << t.trial << ',' << t.degree << ',' << fmt(t.lhs) << ',' << fmt(t.rhs) << ','
           << fmt(t.margin) << ',' << (t.holds ? "HOLDS" : "VIOLATION") << '\n';
    return os.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gammalab::io
