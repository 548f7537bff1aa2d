#include <gtest/gtest.h>

#include "tamecert/suites.hpp"

using namespace tamecert;

namespace {

std::string dump(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) out += r.to_json().dump() + "\n";
    return out;
}

}  // namespace

TEST(Suites, Deterministic) {
    SuiteOptions o;
    o.seed = 42;
    o.field = FieldSpec::prime(101);
    for (const char* name : {"degrees", "regions", "qtop", "centralizer"}) {
        o.threads = 1;
        auto a = dump(run_suite(name, o));
        o.threads = 4;
        EXPECT_EQ(a, dump(run_suite(name, o))) << name;
    }
}

TEST(Suites, Centralizer) {
    SuiteOptions o;
    o.field = FieldSpec::prime(7);
    auto reports = run_suite("centralizer", o);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_TRUE(reports[0].ok());
    EXPECT_EQ(reports[0].details["order"], 6);
    EXPECT_EQ(exit_code(reports), 0);
}

TEST(Suites, ExitCodes) {
    SuiteOptions o;
    o.budget.max_terms = 50;
    auto reports = run_suite("theorem", o);
    EXPECT_EQ(exit_code(reports), 2);
    EXPECT_THROW(run_suite("nonsense", o), Error);
}

TEST(Suites, Names) {
    for (const auto& n : suite_names()) EXPECT_FALSE(suite_tasks(n, SuiteOptions{}).empty()) << n;
}
