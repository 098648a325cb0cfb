// Copyright 2026 The Chronoret Authors.
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

#ifndef CHRONORET_FS_UTIL_HPP_
#define CHRONORET_FS_UTIL_HPP_

#include <string>
#include <string_view>

namespace chronoret {

std::string read_file(const std::string& path);

// Writes to "<path>.tmp" and renames into place; creates parent directories.
void write_file_atomic(const std::string& path, std::string_view content);

void ensure_directory(const std::string& path);

}  // namespace chronoret

#endif  // CHRONORET_FS_UTIL_HPP_
