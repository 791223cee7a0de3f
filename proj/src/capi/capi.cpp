#include "gerbecalc.h"

#include <cstring>
#include <string>

#include "core/engine.hpp"

struct gc_engine {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// runs fn, routing any exception into last_error; fn returns the final status
template <class Fn>
gc_status guarded(gc_engine* e, Fn&& fn) {
  if (!e) return GC_ERROR;
  e->last_error.clear();
  try {
    return fn();
  } catch (const std::exception& ex) {
    e->last_error = ex.what();
  } catch (...) {
    e->last_error = "unknown error";
  }
  return GC_ERROR;
}

}  // namespace

extern "C" {

gc_engine* gc_engine_new(void) { return new gc_engine(); }

void gc_engine_free(gc_engine* e) { delete e; }

const char* gc_last_error(const gc_engine* e) { return e ? e->last_error.c_str() : ""; }

gc_status gc_check(gc_engine* e, const char* dataset_json, const char* suite, int jobs,
                   const char* report_format, char** report_out) {
  return guarded(e, [&]() -> gc_status {
    if (!dataset_json || !suite || !report_format || !report_out)
      throw std::invalid_argument("null argument");
    std::string fmt = report_format;
    if (fmt != "text" && fmt != "json")
      throw std::invalid_argument("unknown report format: " + fmt);
    gerbecalc::Dataset ds = gerbecalc::parse_dataset(dataset_json);
    gerbecalc::Report rep = gerbecalc::run_check(ds, suite, jobs);
    *report_out = dup_string(fmt == "json" ? rep.json_text() : rep.text());
    return rep.ok() ? GC_OK : GC_VIOLATION;
  });
}

gc_status gc_generate(gc_engine* e, const char* mode, unsigned long long seed, int base_dim,
                      int trunc, const char* flavor, char** dataset_out) {
  return guarded(e, [&]() -> gc_status {
    if (!mode || !flavor || !dataset_out) throw std::invalid_argument("null argument");
    gerbecalc::EngineContext ec;
    ec.d = base_dim;
    ec.D = trunc;
    ec.flavor = gerbecalc::flavor_parse(flavor);
    if (ec.d < 1 || ec.d > gerbecalc::kMaxBaseDim)
      throw std::invalid_argument("base_dim out of range");
    if (ec.D < 0 || ec.D > 6) throw std::invalid_argument("trunc out of range");
    gerbecalc::Dataset ds = gerbecalc::run_generate(mode, ec, seed);
    *dataset_out = dup_string(gerbecalc::serialize(ds));
    return GC_OK;
  });
}

gc_status gc_derive(gc_engine* e, const char* dataset_json, char** dataset_out) {
  return guarded(e, [&]() -> gc_status {
    if (!dataset_json || !dataset_out) throw std::invalid_argument("null argument");
    gerbecalc::Dataset ds = gerbecalc::run_derive(gerbecalc::parse_dataset(dataset_json));
    *dataset_out = dup_string(gerbecalc::serialize(ds));
    return GC_OK;
  });
}

gc_status gc_normalize(gc_engine* e, const char* dataset_json, char** dataset_out) {
  return guarded(e, [&]() -> gc_status {
    if (!dataset_json || !dataset_out) throw std::invalid_argument("null argument");
    gerbecalc::Dataset ds = gerbecalc::run_normalize(gerbecalc::parse_dataset(dataset_json));
    *dataset_out = dup_string(gerbecalc::serialize(ds));
    return GC_OK;
  });
}

void gc_string_free(char* s) { delete[] s; }

}  // extern "C"
