// Copyright 2026 The Panotrack Authors.
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

#ifndef PANOTRACK_IO_REPORT_IO_H_
#define PANOTRACK_IO_REPORT_IO_H_

#include <string>

#include "panotrack/metrics/report.h"

namespace panotrack::io {

struct ReportMetadata {
  std::string tool_version;
  // Verbatim JSON object echoed under the report's "config" key; empty
  // means an empty object.
  std::string config_json;
};

// The report as JSON text, schema "panotrack/report@1": headline metrics,
// per-class segment and pixel tallies, per-track association scores and
// switch counts, tool version and the configuration echo. Keys are sorted,
// and doubles serialize to their shortest exact form, so equal reports
// render byte-identically.
std::string RenderReport(const metrics::MetricReport& report,
                         const ReportMetadata& metadata);

void WriteReport(const metrics::MetricReport& report,
                 const ReportMetadata& metadata, const std::string& path);

}  // namespace panotrack::io

#endif  // PANOTRACK_IO_REPORT_IO_H_
