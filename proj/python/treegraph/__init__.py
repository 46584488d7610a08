# Copyright 2026 The Treegraph Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Treebank corpora as annotation graphs."""

from ._treegraph import Corpus, Error, formats, operation_names


def read_file(path, format="penn"):
    with open(path, encoding="utf-8") as f:
        return Corpus.read(format, f.read())


__all__ = ["Corpus", "Error", "formats", "operation_names", "read_file"]
