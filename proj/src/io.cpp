#include "qax/io.hpp"

namespace qax::io {

namespace {

std::vector<std::string> labels_from(const json& j) {
    if (!j.is_object() || !j.contains("labels") || !j.at("labels").is_array()) throw Error("expected an object with a 'labels' array");
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) {
        if (!l.is_string()) throw Error("outcome labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    return labels;
}

}  // namespace

json operator_to_json(const Operator& op) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index k = 0; k < op.cols(); ++k) entries.push_back({op(i, k).real(), op(i, k).imag()});
    return {{"dim", op.rows()}, {"entries", std::move(entries)}};
}

Operator operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) throw Error("operator JSON needs 'dim' and 'entries'");
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long>() < 1) throw Error("operator 'dim' must be a positive integer");
    const auto dim = Eigen::Index(j.at("dim").get<long>());
    const auto& e = j.at("entries");
    if (!e.is_array() || Eigen::Index(e.size()) != dim * dim) throw Error("operator 'entries' must hold dim*dim [re, im] pairs");
    Operator op(dim, dim);
    for (Eigen::Index i = 0; i < dim * dim; ++i) {
        const auto& z = e[std::size_t(i)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
            throw Error("operator entry must be a [re, im] pair");
        op(i / dim, i % dim) = {z[0].get<double>(), z[1].get<double>()};
    }
    return op;
}

json povm_to_json(const Povm<double>& p) {
    json effects = json::array();
    for (const auto& e : p.effects) effects.push_back(operator_to_json(e));
    return {{"labels", p.space.labels()}, {"effects", std::move(effects)}};
}

Povm<double> povm_from_json(const json& j, const Tolerances<double>& tol) {
    auto labels = labels_from(j);
    if (!j.contains("effects") || !j.at("effects").is_array()) throw Error("POVM JSON needs an 'effects' array");
    std::vector<Operator> effects;
    for (const auto& e : j.at("effects")) effects.push_back(operator_from_json(e));
    return make_povm<double>(OutcomeSpace(std::move(labels)), std::move(effects), tol);
}

json instrument_to_json(const Instrument<double>& ins) {
    json kraus = json::array();
    for (const auto& list : ins.kraus) {
        json ops = json::array();
        for (const auto& k : list) ops.push_back(operator_to_json(k));
        kraus.push_back(std::move(ops));
    }
    return {{"labels", ins.space.labels()}, {"kraus", std::move(kraus)}};
}

Instrument<double> instrument_from_json(const json& j, const Tolerances<double>& tol) {
    auto labels = labels_from(j);
    if (!j.contains("kraus") || !j.at("kraus").is_array()) throw Error("instrument JSON needs a 'kraus' array");
    std::vector<std::vector<Operator>> kraus;
    for (const auto& list : j.at("kraus")) {
        if (!list.is_array()) throw Error("each 'kraus' entry must be an array of operators");
        std::vector<Operator> ops;
        for (const auto& k : list) ops.push_back(operator_from_json(k));
        kraus.push_back(std::move(ops));
    }
    return make_instrument<double>(OutcomeSpace(std::move(labels)), std::move(kraus), tol);
}

}  // namespace qax::io
