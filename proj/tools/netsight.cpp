// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "netsight/app.hpp"

int main(int argc, char** argv) {
    CLI::App cli{"passive network situational awareness toolkit"};
    cli.require_subcommand(1);

    netsight::app::AnalyzeOptions aopt;
    auto* analyze = cli.add_subcommand("analyze", "decode a capture and write reports");
    analyze->add_option("pcap", aopt.pcap_path, "capture file")->required();
    analyze->add_option("--config", aopt.config_path, "chain config JSON");
    analyze->add_option("--knowledge-dir", aopt.knowledge_dir, "knowledge tables directory")
        ->envname("NETSIGHT_KNOWLEDGE_DIR");
    analyze->add_option("--policies", aopt.policies_path, "policy rules JSON");
    analyze->add_option("--out", aopt.out_dir, "output directory")->required();

    netsight::app::GenerateOptions gopt;
    auto* generate = cli.add_subcommand("generate", "emit a labeled synthetic capture");
    generate->add_option("scenario", gopt.scenario, "scenario JSON path or 'office-small'")
        ->required();
    generate->add_option("--seed", gopt.seed, "generator seed");
    generate->add_option("--out", gopt.out_dir, "output directory")->required();

    std::string profiles_path;
    std::string labels_path;
    auto* score = cli.add_subcommand("score", "per-engine accuracy against labels");
    score->add_option("profiles", profiles_path, "profiles.ndjson")->required();
    score->add_option("labels", labels_path, "sidecar or label-map JSON")->required();

    std::string query_profiles;
    std::vector<std::string> attr_filters;
    auto* query = cli.add_subcommand("query", "filter profiles by resolved attributes");
    query->add_option("profiles", query_profiles, "profiles.ndjson")->required();
    query->add_option("--attr", attr_filters, "k=v equality filter (repeatable)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e);
    }

    if (cli.got_subcommand(analyze)) return netsight::app::run_analyze(aopt, std::cerr);
    if (cli.got_subcommand(generate)) return netsight::app::run_generate(gopt, std::cerr);
    if (cli.got_subcommand(score))
        return netsight::app::run_score(profiles_path, labels_path, std::cout, std::cerr);

    std::vector<std::pair<std::string, std::string>> filters;
    for (const auto& f : attr_filters) {
        auto eq = f.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad filter (expected k=v): " << f << "\n";
            return 1;
        }
        filters.emplace_back(f.substr(0, eq), f.substr(eq + 1));
    }
    return netsight::app::run_query(query_profiles, filters, std::cout, std::cerr);
}
