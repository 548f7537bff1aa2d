#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "json.hpp"

namespace tamecert {

using Json = nlohmann::ordered_json;

struct Counterexample {
    std::string input;
    std::string stage;
    std::string expected;
    std::string got;
};

enum class Status { pass, fail, budget };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::budget: return "budget";
    }
    return "?";
}

// Outcome of one check: a sample count, how many passed, and the first failure.
struct VerificationReport {
    static constexpr int schema = 1;

    std::string check;
    Json params = Json::object();
    std::string field;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t passed = 0;
    std::optional<Counterexample> counterexample;
    std::optional<double> wall_time_ms;
    bool budget_exhausted = false;
    Json details = Json::object();

    VerificationReport() = default;
    VerificationReport(std::string check_name, std::string field_name, std::uint64_t s)
        : check(std::move(check_name)), field(std::move(field_name)), seed(s) {}

    void record(bool ok, const Counterexample& cx = {}) {
        ++samples;
        if (ok)
            ++passed;
        else if (!counterexample)
            counterexample = cx;
    }
    void record_pass() { record(true); }
    void record_fail(Counterexample cx) { record(false, std::move(cx)); }

    // Folds another report's counts into this one.
    void absorb(const VerificationReport& other) {
        samples += other.samples;
        passed += other.passed;
        if (!counterexample && other.counterexample) counterexample = other.counterexample;
        budget_exhausted = budget_exhausted || other.budget_exhausted;
    }

    Status status() const {
        if (passed < samples) return Status::fail;
        if (budget_exhausted) return Status::budget;
        return Status::pass;
    }
    bool ok() const { return status() == Status::pass; }

    Json to_json() const {
        Json j;
        j["schema"] = schema;
        j["check"] = check;
        j["status"] = to_string(status());
        j["field"] = field;
        j["seed"] = seed;
        j["params"] = params;
        j["samples"] = samples;
        j["passed"] = passed;
        if (counterexample)
            j["counterexample"] = {{"input", counterexample->input},
                                   {"stage", counterexample->stage},
                                   {"expected", counterexample->expected},
                                   {"got", counterexample->got}};
        else
            j["counterexample"] = nullptr;
        if (!details.empty()) j["details"] = details;
        j["wall_time_ms"] = wall_time_ms ? Json(*wall_time_ms) : Json(nullptr);
        return j;
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace tamecert
