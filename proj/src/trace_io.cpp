#include "fitbo/trace_io.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace fitbo {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v(i));
    }
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
    }
    return v;
}

json metric_to_json(double value) {
    // NaN marks "truth unavailable"; JSON has no NaN, so use null.
    return std::isnan(value) ? json(nullptr) : json(value);
}

double metric_from_json(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string trace_to_jsonl(const BOTrace& trace) {
    std::ostringstream out;
    json header;
    header["schema"] = kTraceSchema;
    header["benchmark"] = trace.benchmark;
    header["kind"] = trace.kind;
    header["seed"] = trace.seed;
    header["dim"] = trace.dim;
    header["init_count"] = trace.init_count;
    header["m_samples"] = trace.m_samples;
    header["aborted"] = trace.aborted;
    header["error"] = trace.error;
    out << header.dump() << "\n";
    int iter = 0;
    for (const IterationRecord& r : trace.records) {
        json rec;
        rec["iter"] = ++iter;
        rec["x"] = vector_to_json(r.query);
        rec["y"] = r.observation;
        rec["xhat"] = vector_to_json(r.recommendation);
        rec["ir"] = metric_to_json(r.ir);
        rec["l2"] = metric_to_json(r.l2);
        rec["t_sampling"] = r.sampling_seconds;
        rec["t_acq_opt"] = r.acq_opt_seconds;
        rec["obj_evals"] = r.objective_evals;
        out << rec.dump() << "\n";
    }
    return out.str();
}

BOTrace trace_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("trace_from_jsonl: empty input");
    }
    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("trace_from_jsonl: bad header: ") + e.what());
    }
    if (header.value("schema", "") != kTraceSchema) {
        throw std::runtime_error("trace_from_jsonl: unknown schema");
    }

    BOTrace trace;
    trace.benchmark = header.value("benchmark", "");
    trace.kind = header.value("kind", "");
    trace.seed = header.value("seed", std::uint64_t{0});
    trace.dim = header.value("dim", 0);
    trace.init_count = header.value("init_count", 0);
    trace.m_samples = header.value("m_samples", 0);
    trace.aborted = header.value("aborted", false);
    trace.error = header.value("error", "");

    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(std::string("trace_from_jsonl: bad record: ") + e.what());
        }
        IterationRecord r;
        r.query = vector_from_json(rec.at("x"));
        r.observation = rec.at("y").get<double>();
        r.recommendation = vector_from_json(rec.at("xhat"));
        r.ir = metric_from_json(rec.at("ir"));
        r.l2 = metric_from_json(rec.at("l2"));
        r.sampling_seconds = rec.at("t_sampling").get<double>();
        r.acq_opt_seconds = rec.at("t_acq_opt").get<double>();
        r.objective_evals = rec.at("obj_evals").get<std::int64_t>();
        trace.records.push_back(std::move(r));
    }
    return trace;
}

}  // namespace fitbo
