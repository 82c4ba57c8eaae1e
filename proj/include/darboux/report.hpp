#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "darboux/cauchy.hpp"
#include "darboux/embedding.hpp"
#include "darboux/mesh_io.hpp"

namespace darboux {

// Cross-check flags between alternative closed-form routes; each is
// recomputed numerically on every run so downstream consumers can assert
// the discrepancies are reproduced. True = the alternative route disagrees
// with the isometry-oracle-validated one the implementation uses.
inline nlohmann::json errata_json() {
    const EmbeddingErrata e = compute_embedding_errata();
    nlohmann::json j;
    j["uv_chart_scale"] = e.uv_chart_scale;
    j["special_example_x1x2"] = e.special_example_x1x2;
    j["lift_ode_coefficient"] = compute_lift_errata();
    return j;
}

class ReportBuilder {
  public:
    explicit ReportBuilder(const std::string& command) {
        start_ = std::chrono::steady_clock::now();
        j_["schema_version"] = 1;
        j_["command"] = command;
    }

    nlohmann::json& root() { return j_; }

    void set_config(nlohmann::json cfg) { j_["config"] = std::move(cfg); }
    void set_tolerances(nlohmann::json tol) { j_["tolerances"] = std::move(tol); }
    void set_verdict(bool v) { j_["verdict"] = v; }

    void add_channel(const std::string& name, double max_value, double mean_value) {
        j_["residuals"][name] = {{"max", max_value}, {"mean", mean_value}};
    }
    void add_max(const std::string& name, double max_value) {
        j_["residuals"][name] = {{"max", max_value}};
    }

    void add_verify_summary(const std::string& prefix, const VerifySummary& s) {
        add_channel(prefix + "_isometry", s.max_isom, s.mean_isom);
        add_channel(prefix + "_curvature", s.max_K, s.mean_K);
        if (s.flagged_vertices > 0) j_["residuals"][prefix + "_flagged"] = s.flagged_vertices;
    }

    // Finalizes errata + timing and writes atomically.
    void write(const std::string& path) {
        j_["errata"] = errata_json();
        const auto stop = std::chrono::steady_clock::now();
        j_["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start_).count();
        write_text_atomic(path, j_.dump(2) + "\n");
    }

    nlohmann::json finish() {
        j_["errata"] = errata_json();
        const auto stop = std::chrono::steady_clock::now();
        j_["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start_).count();
        return j_;
    }

  private:
    nlohmann::json j_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace darboux
