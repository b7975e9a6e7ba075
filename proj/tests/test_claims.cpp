// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netsight/claims.hpp"

using namespace netsight;

namespace {

AttributeClaim claim(const std::string& engine, const std::string& value,
                     double conf, const std::string& attr = "device_type") {
    AttributeClaim c;
    c.device_key = "02:c0:00:00:00:01";
    c.attribute = attr;
    c.value = value;
    c.confidence = conf;
    c.engine_id = engine;
    c.ts = Timestamp{1'000'000};
    return c;
}

}  // namespace

TEST_CASE("ensemble picks the value with the largest confidence sum") {
    auto r = resolve_attribute({claim("E1", "printer", 0.6), claim("E2", "camera", 0.3)},
                               CompositionMode::Ensemble);
    CHECK_EQ(r.value, "printer");
    CHECK_EQ(r.confidence, doctest::Approx(0.6 / 0.9).epsilon(0.001));
    CHECK_EQ(r.engines, std::vector<std::string>{"E1"});
}

TEST_CASE("agreeing engines accumulate; contributors listed sorted") {
    auto r = resolve_attribute({claim("oui", "Acme", 0.9), claim("dns", "Acme", 0.5),
                                claim("tls", "Other", 0.6)},
                               CompositionMode::Ensemble);
    CHECK_EQ(r.value, "Acme");
    CHECK_EQ(r.confidence, doctest::Approx(1.4 / 2.0));
    CHECK_EQ(r.engines, std::vector<std::string>({"dns", "oui"}));
}

TEST_CASE("ensemble tie breaks to the lexicographically smallest value") {
    auto r = resolve_attribute({claim("E1", "x", 0.5), claim("E2", "y", 0.5)},
                               CompositionMode::Ensemble);
    CHECK_EQ(r.value, "x");
    CHECK_EQ(r.confidence, doctest::Approx(0.5));

    auto r2 = resolve_attribute({claim("E1", "zebra", 0.5), claim("E2", "aardvark", 0.5)},
                                CompositionMode::Ensemble);
    CHECK_EQ(r2.value, "aardvark");
}

TEST_CASE("all-agreeing claims give confidence 1") {
    auto r = resolve_attribute({claim("a", "v", 0.9), claim("b", "v", 0.5)},
                               CompositionMode::Ensemble);
    CHECK_EQ(r.confidence, doctest::Approx(1.0));
}

TEST_CASE("zero-confidence claims resolve without dividing by zero") {
    auto r = resolve_attribute({claim("E1", "b", 0.0), claim("E2", "a", 0.0)},
                               CompositionMode::Ensemble);
    CHECK_EQ(r.value, "a");
    CHECK_EQ(r.confidence, 0.0);
}

TEST_CASE("argmax is invariant under positive scaling of all confidences") {
    Rng rng(77);
    std::vector<std::string> values{"a", "b", "c", "d"};
    std::vector<std::string> engines{"e1", "e2", "e3", "e4", "e5"};
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<AttributeClaim> claims;
        size_t n = rng.range(1, 6);
        for (size_t i = 0; i < n; ++i)
            claims.push_back(claim(engines[i % engines.size()], rng.pick(values),
                                   rng.unit()));
        double scale = 0.01 + rng.unit() * 5.0;
        auto scaled = claims;
        for (auto& c : scaled) c.confidence *= scale;

        auto r1 = resolve_attribute(claims, CompositionMode::Ensemble);
        auto r2 = resolve_attribute(scaled, CompositionMode::Ensemble);
        CHECK_EQ(r1.value, r2.value);
        CHECK_EQ(r1.confidence, doctest::Approx(r2.confidence).epsilon(1e-9));
    }
}

TEST_CASE("best classifier follows the accuracy table, not confidence") {
    AccuracyTable acc;
    acc.set("E1", "device_type", 0.6);
    acc.set("E2", "device_type", 0.9);
    auto r = resolve_attribute({claim("E1", "printer", 0.6), claim("E2", "camera", 0.3)},
                               CompositionMode::BestClassifier, &acc);
    CHECK_EQ(r.value, "camera");
    CHECK_EQ(r.confidence, doctest::Approx(0.3));  // the winning claim's own confidence
    CHECK_EQ(r.engines, std::vector<std::string>{"E2"});
}

TEST_CASE("best classifier ties break to the smaller engine id") {
    AccuracyTable acc;
    acc.set("beta", "device_type", 0.8);
    acc.set("alpha", "device_type", 0.8);
    auto r = resolve_attribute({claim("beta", "camera", 0.9), claim("alpha", "printer", 0.2)},
                               CompositionMode::BestClassifier, &acc);
    CHECK_EQ(r.value, "printer");
}

TEST_CASE("missing accuracy for a contributing engine is an error") {
    AccuracyTable acc;
    acc.set("E1", "device_type", 0.7);
    CHECK_THROWS_AS(resolve_attribute({claim("E1", "a", 0.5), claim("E2", "b", 0.5)},
                                      CompositionMode::BestClassifier, &acc),
                    CompositionError);
    // same engine on a different attribute does not help
    AccuracyTable acc2;
    acc2.set("E1", "os", 0.7);
    CHECK_THROWS_AS(resolve_attribute({claim("E1", "a", 0.5)},
                                      CompositionMode::BestClassifier, &acc2),
                    CompositionError);
}

TEST_CASE("empty claim set is rejected") {
    CHECK_THROWS_AS(resolve_attribute({}, CompositionMode::Ensemble), CompositionError);
}

TEST_CASE("scoring counts per-engine claim correctness against labels") {
    LabelMap labels;
    labels["d1"]["device_type"] = "printer";
    labels["d2"]["device_type"] = "camera";
    labels["d3"]["device_type"] = "camera";
    labels["d1"]["os"] = "linux";

    std::vector<AttributeClaim> claims;
    auto add = [&](const std::string& dev, const std::string& engine,
                   const std::string& attr, const std::string& value) {
        AttributeClaim c;
        c.device_key = dev;
        c.engine_id = engine;
        c.attribute = attr;
        c.value = value;
        c.confidence = 0.5;
        claims.push_back(c);
    };
    add("d1", "ua", "device_type", "printer");   // correct
    add("d2", "ua", "device_type", "printer");   // wrong
    add("d3", "ua", "device_type", "camera");    // correct
    add("d2", "tls", "device_type", "camera");   // correct
    add("d1", "ua", "os", "linux");              // correct
    add("d9", "ua", "device_type", "printer");   // unlabeled device: ignored
    add("d1", "ua", "browser", "firefox");       // unlabeled attribute: ignored

    auto acc = score_claims(claims, labels);
    CHECK_EQ(*acc.get("ua", "device_type"), doctest::Approx(2.0 / 3.0));
    CHECK_EQ(*acc.get("tls", "device_type"), doctest::Approx(1.0));
    CHECK_EQ(*acc.get("ua", "os"), doctest::Approx(1.0));
    CHECK_FALSE(acc.get("ua", "browser").has_value());
    CHECK_FALSE(acc.get("tls", "os").has_value());
    CHECK_EQ(acc.entries.size(), 3);
}

TEST_CASE("accuracy csv round trip") {
    AccuracyTable acc;
    acc.set("ua", "device_type", 2.0 / 3.0);
    acc.set("tls", "device_type", 1.0);
    auto csv = acc.to_csv();
    CHECK(csv.find("engine_id,attribute,accuracy\n") == 0);
    CHECK(csv.find("tls,device_type,1.000000\n") != std::string::npos);
    CHECK(csv.find("ua,device_type,0.666667\n") != std::string::npos);
}

TEST_CASE("vocabulary contains the claimable attributes") {
    for (const char* a : {"manufacturer", "os", "browser", "device_type", "is_iot",
                          "stack", "behavior_mode", "owner"})
        CHECK(is_known_attribute(a));
    CHECK_FALSE(is_known_attribute("favorite_color"));
    CHECK_EQ(attribute_vocabulary().size(), 8);
}
