// Copyright 2026 The rlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rlab/rlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "rlab/error.hpp"
#include "rlab/io.hpp"
#include "rlab/pipeline.hpp"
#include "rlab/spectra.hpp"

struct rlab_complex {
  rlab::ColoredComplex value;
};

struct rlab_spectrum {
  rlab::SpectrumSet value;
};

namespace {

thread_local std::string last_error;

rlab_status to_status(rlab::ErrorCode code) {
  return static_cast<rlab_status>(static_cast<int>(code) + 1);
}

template <class F>
rlab_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RLAB_OK;
  } catch (const rlab::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RLAB_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RLAB_INTERNAL_ERROR;
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw rlab::Error(rlab::ErrorCode::kInvalidParams, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* rlab_version(void) { return rlab::kVersion; }

const char* rlab_status_name(rlab_status status) {
  if (status == RLAB_OK) return "Ok";
  if (status == RLAB_INTERNAL_ERROR) return "InternalError";
  if (status < RLAB_OK || status > RLAB_INTERNAL_ERROR) return "Unknown";
  return rlab::error_code_name(static_cast<rlab::ErrorCode>(static_cast<int>(status) - 1));
}

int rlab_exit_code(rlab_status status) {
  if (status == RLAB_OK) return 0;
  if (status == RLAB_INTERNAL_ERROR) return 3;
  return rlab::is_numerical(static_cast<rlab::ErrorCode>(static_cast<int>(status) - 1)) ? 3 : 2;
}

const char* rlab_last_error(void) { return last_error.c_str(); }

void rlab_string_free(char* text) { std::free(text); }

rlab_status rlab_complex_from_json(const char* json, rlab_complex** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new rlab_complex{rlab::parse_complex(json).colored()};
  });
}

rlab_status rlab_complex_load(const char* path, rlab_complex** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rlab_complex{rlab::load_complex(path).colored()};
  });
}

rlab_status rlab_complex_to_json(const rlab_complex* complex, char** out) {
  return guarded([&] {
    require(complex, "complex");
    require(out, "out");
    *out = duplicate(rlab::colored_to_json(complex->value));
  });
}

size_t rlab_complex_num_vertices(const rlab_complex* complex) {
  return complex == nullptr ? 0 : complex->value.complex.num_vertices();
}

int rlab_complex_dimension(const rlab_complex* complex) {
  return complex == nullptr ? -1 : complex->value.complex.dimension();
}

size_t rlab_complex_num_cells(const rlab_complex* complex, int dim) {
  if (complex == nullptr || dim < 0 || dim > complex->value.complex.dimension()) return 0;
  return complex->value.complex.num_cells(dim);
}

void rlab_complex_free(rlab_complex* complex) { delete complex; }

rlab_status rlab_spectrum_compute(const rlab_complex* complex, int dim, const char* family,
                                  rlab_spectrum** out) {
  return guarded([&] {
    require(complex, "complex");
    require(out, "out");
    const auto ops = rlab::make_family(complex->value, dim, family == nullptr ? "adjacency" : family);
    rlab::JointSpectrumOptions opts;
    opts.keep_eigenvectors = false;
    *out = new rlab_spectrum{rlab::joint_spectrum(ops, opts)};
  });
}

size_t rlab_spectrum_size(const rlab_spectrum* spectrum) {
  return spectrum == nullptr ? 0 : spectrum->value.size();
}

size_t rlab_spectrum_arity(const rlab_spectrum* spectrum) {
  return spectrum == nullptr ? 0 : spectrum->value.arity();
}

rlab_status rlab_spectrum_point(const rlab_spectrum* spectrum, size_t index, double* re, double* im) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(re, "re");
    require(im, "im");
    if (index >= spectrum->value.size()) throw rlab::Error(rlab::ErrorCode::kInvalidParams, "point index out of range");
    const auto& p = spectrum->value.points[index];
    for (size_t k = 0; k < p.size(); ++k) {
      re[k] = p[k].real();
      im[k] = p[k].imag();
    }
  });
}

double rlab_spectrum_residual(const rlab_spectrum* spectrum) {
  return spectrum == nullptr ? 0.0 : spectrum->value.reconstruction_residual;
}

void rlab_spectrum_free(rlab_spectrum* spectrum) { delete spectrum; }

rlab_status rlab_verdict(const rlab_complex* complex, int dim, const char* family, const char* reference,
                         double tolerance, int* ramanujan) {
  return guarded([&] {
    require(complex, "complex");
    require(reference, "reference");
    require(ramanujan, "ramanujan");
    const auto ops = rlab::make_family(complex->value, dim, family == nullptr ? "adjacency" : family);
    const auto ref = rlab::ReferenceSpectrum::parse(reference);
    rlab::JointSpectrumOptions opts;
    opts.keep_eigenvectors = false;
    const auto spectrum = rlab::joint_spectrum(ops, opts);
    auto trivial = rlab::trivial_spectrum(complex->value, ops);
    const auto model = ref.model_trivial();
    if (model.arity == trivial.arity) trivial = trivial.merged(model);
    *ramanujan = rlab::ramanujan_verdict(spectrum, trivial, ref, tolerance).ramanujan ? 1 : 0;
  });
}

rlab_status rlab_run(const char* config_json, char** report_json, char** csv) {
  return guarded([&] {
    require(config_json, "config_json");
    const rlab::Report r = rlab::run(rlab::RunConfig::from_json(config_json));
    if (report_json != nullptr) *report_json = duplicate(r.json);
    if (csv != nullptr) *csv = duplicate(r.csv);
  });
}

}  // extern "C"
