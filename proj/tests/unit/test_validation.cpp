#include <gtest/gtest.h>

#include <algorithm>

#include "noonlith/validation.hpp"

using namespace noonlith;
using namespace noonlith::validation;

namespace {

std::vector<CheckResult> quick_results(const Context& ctx) {
  return run_checks(ctx, true, [](const CheckResult&) {});
}

bool passed(const std::vector<CheckResult>& results, const std::string& id) {
  const auto it = std::find_if(results.begin(), results.end(),
                               [&](const CheckResult& r) { return r.id == id; });
  EXPECT_NE(it, results.end()) << id;
  return it != results.end() && it->passed;
}

}  // namespace

TEST(Validation, QuickSuitePasses) {
  const auto results = quick_results(Context{});
  EXPECT_GE(results.size(), 20u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.id << ": " << r.detail;
}

TEST(Validation, CheckIdsAreUnique) {
  auto results = quick_results(Context{});
  std::vector<std::string> ids;
  for (const auto& r : results) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
}

TEST(Validation, SMinusTMutationIsCaught) {
  Context ctx;
  ctx.steuernagel = mutated_steuernagel;
  const auto results = quick_results(ctx);
  EXPECT_FALSE(passed(results, "PM-2"));
  EXPECT_TRUE(std::any_of(results.begin(), results.end(),
                          [](const CheckResult& r) { return !r.passed; }));
  // the mutation touches only the Steuernagel model
  EXPECT_TRUE(passed(results, "GN-1"));
  EXPECT_TRUE(passed(results, "EX-2"));
}

TEST(Validation, ThrowingCheckIsReportedAsFailure) {
  Context ctx;
  ctx.steuernagel = [](const SlitGeometry&, const DetectorGrid&, Normalization) -> CoincidenceMap {
    throw InvalidArgument("boom");
  };
  const auto results = quick_results(ctx);
  EXPECT_FALSE(passed(results, "PM-2"));
  const auto it = std::find_if(results.begin(), results.end(),
                               [](const CheckResult& r) { return r.id == "PM-2"; });
  EXPECT_NE(it->detail.find("boom"), std::string::npos);
}
