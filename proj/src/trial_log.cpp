#include "shac/trial_log.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "shac/errors.hpp"

namespace shac {

using nlohmann::json;

void TrialLog::append_trial(TrialRecord record) {
    if (!records_.empty() && record.trial <= records_.back().trial) {
        throw ProtocolError("trial indices must be strictly increasing");
    }
    records_.push_back(std::move(record));
}

void TrialLog::append_adoption(AdoptionEvent event) {
    adoptions_.push_back(event);
}

namespace {

json trial_to_json(const TrialRecord& r) {
    return json{{"trial", r.trial},
                {"batch", r.batch},
                {"point", r.point.coords},
                {"value", r.value},
                {"attempts", r.attempts},
                {"cascade_size", r.cascade_size}};
}

json adoption_to_json(const AdoptionEvent& e) {
    json j{{"event", "adopt"}, {"batch", e.batch}, {"cascade_size", e.cascade_size}};
    if (e.cv_accuracy) {
        j["cv_accuracy"] = *e.cv_accuracy;
    } else {
        j["cv_accuracy"] = nullptr;
    }
    return j;
}

} // namespace

void write_jsonl(const TrialLog& log, std::ostream& out) {
    std::size_t next_adoption = 0;
    const auto& adoptions = log.adoptions();
    const auto& records = log.records();

    auto flush_adoptions_through = [&](std::int64_t batch) {
        while (next_adoption < adoptions.size() && adoptions[next_adoption].batch <= batch) {
            out << adoption_to_json(adoptions[next_adoption]).dump() << '\n';
            ++next_adoption;
        }
    };

    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && records[i].batch != records[i - 1].batch) {
            flush_adoptions_through(records[i - 1].batch);
        }
        out << trial_to_json(records[i]).dump() << '\n';
    }
    if (!records.empty()) {
        flush_adoptions_through(records.back().batch);
    }
    // events past the last trial batch, if any
    while (next_adoption < adoptions.size()) {
        out << adoption_to_json(adoptions[next_adoption]).dump() << '\n';
        ++next_adoption;
    }
}

TrialLog read_jsonl(std::istream& in) {
    TrialLog log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error("trial log line " + std::to_string(line_no) + ": " + e.what());
        }
        if (j.contains("event")) {
            AdoptionEvent e;
            e.batch = j.at("batch").get<std::int64_t>();
            e.cascade_size = j.at("cascade_size").get<int>();
            if (j.contains("cv_accuracy") && !j.at("cv_accuracy").is_null()) {
                e.cv_accuracy = j.at("cv_accuracy").get<double>();
            }
            log.append_adoption(e);
        } else {
            TrialRecord r;
            r.trial = j.at("trial").get<std::int64_t>();
            r.batch = j.at("batch").get<std::int64_t>();
            r.point.coords = j.at("point").get<std::vector<double>>();
            r.value = j.at("value").get<double>();
            r.attempts = j.at("attempts").get<std::int64_t>();
            r.cascade_size = j.at("cascade_size").get<int>();
            log.append_trial(std::move(r));
        }
    }
    return log;
}

} // namespace shac
