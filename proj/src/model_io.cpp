#include "fcpca/model_io.hpp"

#include <fstream>

#include <json.hpp>

namespace fcpca {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) raise(ErrorKind::InvalidArgument, "serialize_model: non-finite value");
        a.push_back(v[i]);
    }
    return a;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
    return rows;
}

Eigen::VectorXd vector_from_json(const json& a) {
    Eigen::VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    return v;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
    if (rows.empty()) return {};
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            raise(ErrorKind::Format, "model file: ragged matrix");
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
    return m;
}

} // namespace

std::string serialize_model(const FcpcaModel& model) {
    json j;
    j["format"] = "fcpca-model";
    j["version"] = 1;
    j["basis"] = {{"n_basis", model.basis->size()},
                  {"order", model.basis->order()},
                  {"interval", {model.basis->interval().lo, model.basis->interval().hi}}};
    j["series_length"] = model.series_length;
    j["label_values"] = model.label_values;
    j["grand_mean"] = vector_to_json(model.grand_mean);
    j["priors"] = vector_to_json(model.priors);
    json subs = json::array();
    for (const Subspace& s : model.subspaces) {
        json e;
        e["class_index"] = s.class_index;
        e["n_fpc"] = s.n_fpc;
        e["class_mean"] = vector_to_json(s.class_mean);
        e["features"] = matrix_to_json(s.features);
        e["lda_means"] = matrix_to_json(s.lda_means);
        e["lda_pooled_cov"] = matrix_to_json(s.lda_pooled_cov);
        subs.push_back(std::move(e));
    }
    j["subspaces"] = std::move(subs);
    return j.dump(2) + "\n";
}

FcpcaModel deserialize_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(ErrorKind::Format, std::string("model file: ") + e.what());
    }
    if (!j.contains("format") || j["format"] != "fcpca-model")
        raise(ErrorKind::Format, "model file: missing fcpca-model marker");
    if (!j.contains("version") || j["version"].get<int>() != 1)
        raise(ErrorKind::Format, "model file: unsupported version");

    FcpcaModel model;
    const json& b = j.at("basis");
    const json& iv = b.at("interval");
    model.basis = make_basis(b.at("n_basis").get<int>(), b.at("order").get<int>(),
                             Interval{iv[0].get<double>(), iv[1].get<double>()});
    model.series_length = j.value("series_length", 0);
    if (j.contains("label_values"))
        model.label_values = j["label_values"].get<std::vector<long long>>();
    model.grand_mean = vector_from_json(j.at("grand_mean"));
    model.priors = vector_from_json(j.at("priors"));
    for (const json& e : j.at("subspaces")) {
        Subspace s;
        s.class_index = e.at("class_index").get<int>();
        s.n_fpc = e.at("n_fpc").get<int>();
        s.class_mean = vector_from_json(e.at("class_mean"));
        s.features = matrix_from_json(e.at("features"));
        s.lda_means = matrix_from_json(e.at("lda_means"));
        s.lda_pooled_cov = matrix_from_json(e.at("lda_pooled_cov"));
        s.finalize();
        model.subspaces.push_back(std::move(s));
    }
    if (model.subspaces.empty() || model.priors.size() != model.class_count())
        raise(ErrorKind::Format, "model file: inconsistent class count");
    return model;
}

void save_model(const FcpcaModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << serialize_model(model);
    if (!out) raise(ErrorKind::Io, "write failed for '" + path + "'");
}

FcpcaModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(text);
}

} // namespace fcpca
