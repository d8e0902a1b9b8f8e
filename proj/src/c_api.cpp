#include "fuzzytrust/fuzzytrust.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "fuzzytrust/config.hpp"
#include "fuzzytrust/error.hpp"
#include "fuzzytrust/fuzzy.hpp"
#include "fuzzytrust/report.hpp"
#include "fuzzytrust/reputation.hpp"
#include "fuzzytrust/simulator.hpp"

struct ft_config {
  fuzzytrust::sim::ScenarioConfig cfg;
};

struct ft_run {
  fuzzytrust::sim::ScenarioConfig cfg;
  std::vector<fuzzytrust::sim::ScenarioResult> results;
};

namespace {

using namespace fuzzytrust;

thread_local std::string g_last_error;

ft_status fail(ft_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

ft_status map_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return fail(FT_ERR_INVALID_ARGUMENT, e.what());
    case ErrorCode::Configuration: return fail(FT_ERR_CONFIG, e.what());
    case ErrorCode::NonConvergence: return fail(FT_ERR_NONCONVERGENCE, e.what());
    case ErrorCode::Undefined: return fail(FT_ERR_UNDEFINED, e.what());
    case ErrorCode::Io: return fail(FT_ERR_IO, e.what());
  }
  return fail(FT_ERR_INTERNAL, e.what());
}

template <class F>
ft_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FT_OK;
  } catch (const Error& e) {
    return map_error(e);
  } catch (const std::bad_alloc&) {
    return fail(FT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FT_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* message) {
  if (!cond) throw InvalidArgument(message);
}

unsigned flag_of(sim::Method m) {
  switch (m) {
    case sim::Method::Fuzzy: return FT_METHOD_FUZZY;
    case sim::Method::Average: return FT_METHOD_AVERAGE;
    case sim::Method::BaselineRep: return FT_METHOD_BASELINE;
  }
  return 0;
}

const sim::ScenarioResult& result_for(const ft_run* run, unsigned method) {
  require(run != nullptr, "run handle is null");
  for (const auto& r : run->results) {
    if (flag_of(r.method) == method) return r;
  }
  throw InvalidArgument("method was not part of this run");
}

}  // namespace

extern "C" {

const char* ft_version(void) { return report::version(); }

const char* ft_last_error(void) { return g_last_error.c_str(); }

const char* ft_status_name(ft_status status) {
  switch (status) {
    case FT_OK: return "ok";
    case FT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FT_ERR_CONFIG: return "configuration error";
    case FT_ERR_NONCONVERGENCE: return "non-convergence";
    case FT_ERR_UNDEFINED: return "undefined value";
    case FT_ERR_IO: return "i/o error";
    case FT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ft_status ft_config_create(ft_config** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new ft_config();
  });
}

void ft_config_destroy(ft_config* cfg) { delete cfg; }

ft_status ft_config_load_file(ft_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg != nullptr && path != nullptr, "null argument");
    auto copy = cfg->cfg;
    config::apply_entries(copy, config::load_key_values(path));
    cfg->cfg = std::move(copy);
  });
}

ft_status ft_config_set(ft_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && value != nullptr, "null argument");
    config::apply(cfg->cfg, key, value);
  });
}

ft_status ft_config_get(const ft_config* cfg, const char* key, char* buf, size_t buflen,
                        size_t* needed) {
  return guarded([&] {
    require(cfg != nullptr && key != nullptr, "null argument");
    std::string value;
    bool found = false;
    for (const auto& [k, v] : config::to_key_values(cfg->cfg)) {
      if (k != key) continue;
      if (found) value += '\n';
      value += v;
      found = true;
    }
    if (!found) throw ConfigError(std::string("unknown configuration key '") + key + "'");
    if (needed) *needed = value.size() + 1;
    require(buf != nullptr && buflen > value.size(), "buffer too small");
    std::memcpy(buf, value.c_str(), value.size() + 1);
  });
}

ft_status ft_config_validate(const ft_config* cfg) {
  return guarded([&] {
    require(cfg != nullptr, "config handle is null");
    cfg->cfg.validate();
  });
}

ft_status ft_parse_methods(const char* list, unsigned* mask) {
  return guarded([&] {
    require(list != nullptr && mask != nullptr, "null argument");
    const std::string text(list);
    unsigned m = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto end = comma == std::string::npos ? text.size() : comma;
      const auto tok = text.substr(pos, end - pos);
      if (tok == "all") {
        m |= FT_METHOD_ALL;
      } else {
        m |= flag_of(sim::parse_method(tok));
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (m == 0) throw InvalidArgument("empty method list");
    *mask = m;
  });
}

ft_status ft_run_execute(const ft_config* cfg, unsigned method_mask, ft_run** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "null argument");
    require(method_mask != 0 && (method_mask & ~static_cast<unsigned>(FT_METHOD_ALL)) == 0,
            "method mask must be a non-empty combination of FT_METHOD_* flags");
    std::vector<sim::Method> methods;
    for (auto m : sim::kAllMethods) {
      if (method_mask & flag_of(m)) methods.push_back(m);
    }
    auto run = std::make_unique<ft_run>();
    run->cfg = cfg->cfg;
    run->results = sim::run_methods(run->cfg, methods);
    *out = run.release();
  });
}

void ft_run_destroy(ft_run* run) { delete run; }

ft_status ft_run_write(const ft_run* run, const char* out_dir) {
  return guarded([&] {
    require(run != nullptr && out_dir != nullptr, "null argument");
    report::write_run(out_dir, run->cfg, run->results);
  });
}

ft_status ft_run_summary(const ft_run* run, unsigned method, ft_summary* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto& s = result_for(run, method).summary;
    out->mean_overall_trust = s.mean_overall_trust;
    out->mean_trust_a_requesters = s.mean_trust_a_requesters;
    out->mean_trust_b_requesters = s.mean_trust_b_requesters;
    out->undefined_campaigns = s.undefined_campaigns;
    out->mean_reputation_a = s.mean_reputation_a;
    out->mean_reputation_b = s.mean_reputation_b;
    out->reputation_separation = s.reputation_separation;
    out->reputation_overlap = s.reputation_overlap;
    out->max_rank_iterations = s.max_rank_iterations;
    out->max_rank_residual = s.max_rank_residual;
  });
}

size_t ft_run_method_count(const ft_run* run) { return run ? run->results.size() : 0; }

ft_status ft_run_method_at(const ft_run* run, size_t index, unsigned* method, const char** name) {
  return guarded([&] {
    require(run != nullptr && index < run->results.size(), "method index out of range");
    const auto m = run->results[index].method;
    if (method) *method = flag_of(m);
    if (name) *name = sim::method_name(m).data();
  });
}

ft_status ft_run_snapshot_count(const ft_run* run, unsigned method, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "output pointer is null");
    *count = result_for(run, method).snapshots.size();
  });
}

ft_status ft_run_reputation(const ft_run* run, unsigned method, size_t interval, double* out,
                            size_t members) {
  return guarded([&] {
    const auto& r = result_for(run, method);
    require(interval < r.snapshots.size(), "interval out of range");
    const auto& rep = r.snapshots[interval].reputation;
    require(out != nullptr && members == rep.size(), "output buffer does not match member count");
    std::memcpy(out, rep.data(), rep.size() * sizeof(double));
  });
}

ft_status ft_evaluate_toc(double qoc, double top, double* toc) {
  return guarded([&] {
    require(toc != nullptr, "output pointer is null");
    *toc = fuzzy::evaluate_toc(qoc, top);
  });
}

ft_status ft_config_evaluate_toc(const ft_config* cfg, double qoc, double top, double* toc) {
  return guarded([&] {
    require(cfg != nullptr && toc != nullptr, "null argument");
    *toc = cfg->cfg.fuzzy.build().evaluate(qoc, top);
  });
}

ft_status ft_update_trust(double current, double toc, double re, double requester_rep,
                          double* updated) {
  return guarded([&] {
    require(updated != nullptr, "output pointer is null");
    *updated = reputation::update_trust(current, toc, re, requester_rep, reputation::UpdatePolicy{});
  });
}

ft_status ft_compute_reputation(size_t n, const double* trust, const double* prev,
                                double tolerance, size_t max_iterations, double* out_rescaled,
                                double* out_raw, size_t* iterations) {
  return guarded([&] {
    require(n > 0 && trust != nullptr && prev != nullptr, "null or empty input");
    reputation::TrustMatrix tm(n, 0.0);
    for (size_t r = 0; r < n; ++r) {
      for (size_t p = 0; p < n; ++p) {
        if (r == p) continue;
        const double v = trust[r * n + p];
        require(v >= 0.0 && v <= 1.0, "trust values must lie in [0, 1]");
        tm.set(r, p, v);
      }
    }
    reputation::RankOptions opts;
    opts.tolerance = tolerance;
    opts.max_iterations = max_iterations;
    const auto res = reputation::compute_reputation(tm, std::span<const double>(prev, n), opts);
    if (out_rescaled) std::memcpy(out_rescaled, res.reputation.data(), n * sizeof(double));
    if (out_raw) std::memcpy(out_raw, res.raw.data(), n * sizeof(double));
    if (iterations) *iterations = res.iterations;
  });
}

ft_status ft_selfcheck(const double* weights, ft_check_callback cb, void* user, int* all_passed) {
  return guarded([&] {
    report::ExampleGraph g;
    if (weights) {
      for (int i = 0; i < 6; ++i) {
        require(weights[i] >= 0.0 && weights[i] <= 1.0, "example weights must lie in [0, 1]");
      }
      g = {weights[0], weights[1], weights[2], weights[3], weights[4], weights[5]};
    }
    bool ok = true;
    for (const auto& c : report::selfcheck(g)) {
      ok = ok && c.passed;
      if (cb) cb(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
