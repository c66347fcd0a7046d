#pragma once

#include <string>

#include <json.hpp>

#include "gammalab/gamma_geom.hpp"
#include "gammalab/interplay.hpp"
#include "gammalab/joint_spectrum.hpp"
#include "gammalab/op_theory.hpp"
#include "gammalab/variety.hpp"
#include "gammalab/vn_check.hpp"

namespace gammalab::io {

using nlohmann::json;

/// Malformed input (missing field, wrong shape); distinct from numerical
/// failures so the CLI can map it to its own exit code.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Complex numbers travel as [re, im] pairs in every format.
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"n": int, "s": [[re,im], ...], "p": [re,im]}
json gamma_point_to_json(const geom::GammaPoint& x);
geom::GammaPoint gamma_point_from_json(const json& j);

// {"order": N, "matrices": [...]}
json matrix_tuple_to_json(const spec::MatrixTuple& t);
spec::MatrixTuple matrix_tuple_from_json(const json& j);

// MatrixTuple layout plus the ambient dimension field "n".
json pencil_to_json(const var::PencilFamily& pf);
var::PencilFamily pencil_from_json(const json& j);

// {"n": int, "order": m, "S": [...], "P": [...]}
json operator_tuple_to_json(const op::OperatorTuple& t);
op::OperatorTuple operator_tuple_from_json(const json& j);

json point_class_to_json(const geom::PointClass& pc);
json joint_spectrum_to_json(const spec::JointSpectrum& js);
json pencil_report_to_json(const var::PencilReport& rep);
json variety_sample_to_json(const var::VarietySample& vs);
json polydisc_points_to_json(const std::vector<var::PolydiscPoint>& pts);
json fo_tuple_to_json(const op::FOTuple& fo);
json classification_to_json(const op::Classification& c);
json vn_report_to_json(const vn::VNReport& rep);
json pushforward_to_json(const inter::PushforwardResult& pr);
json counterexample_to_json(const inter::CounterexampleReport& rep);

/// One row per (grid point, branch, coordinate index):
/// re_p,im_p,branch,i,re_s,im_s,class,det_residual
std::string sample_to_csv(const var::VarietySample& vs);

/// Plot rows: re_p,im_p,branch,i,re_s,im_s,class (grid order, then branch).
std::string plot_data_csv(const var::VarietySample& vs);

/// Per-trial rows: trial,degree,lhs,rhs,margin,verdict
std::string vn_trials_csv(const vn::VNReport& rep);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gammalab::io
