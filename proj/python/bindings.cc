// Copyright 2026 The Treegraph Authors.
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

// Python bindings: corpora in and out of every format, validation and
// edit-script replay.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treegraph/constituency.h"
#include "treegraph/edit_script.h"
#include "treegraph/formats.h"

namespace py = pybind11;
namespace tg = treegraph;
namespace f = treegraph::formats;

namespace {

f::FormatId format_id(const std::string& name) {
  auto id = f::parse_format(name);
  if (!id) throw tg::Error(tg::ErrorCode::kInvalidArgument, "unknown format '" + name + "'");
  return *id;
}

// Held by value so pybind11's list conversion for vectors does not apply.
struct Corpus {
  f::Corpus sentences;
};

const f::Sentence& sentence(const f::Corpus& c, std::size_t i) {
  if (i >= c.size()) throw py::index_error("sentence index out of range");
  return c[i];
}

}  // namespace

PYBIND11_MODULE(_treegraph, m) {
  // The module keeps the class alive; the translator only borrows it.
  static py::handle error = py::exception<tg::Error>(m, "Error").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tg::Error& e) {
      py::object exc = error(e.what());
      exc.attr("code") = std::string(tg::error_code_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("formats", [] {
    std::vector<std::string> out;
    for (auto id : {f::FormatId::kPenn, f::FormatId::kBracketRecord, f::FormatId::kFloresta,
                    f::FormatId::kTurin, f::FormatId::kTigerXml, f::FormatId::kNestedXml,
                    f::FormatId::kNative}) {
      out.emplace_back(f::to_string(id));
    }
    return out;
  });
  m.def("operation_names", &tg::edit::operation_names);

  py::class_<Corpus>(m, "Corpus")
      .def_static("read", [](const std::string& format, const std::string& text) {
        return Corpus{f::read(format_id(format), text)};
      }, py::arg("format"), py::arg("text"))
      .def("write", [](const Corpus& c, const std::string& format, bool allow_unlabeled) {
        return f::write(format_id(format), c.sentences, allow_unlabeled);
      }, py::arg("format"), py::arg("allow_unlabeled") = false)
      .def("__len__", [](const Corpus& c) { return c.sentences.size(); })
      .def("edit", [](Corpus& c, const std::string& script) {
        f::Corpus work = c.sentences;
        tg::edit::run_script(work, tg::edit::parse_script(script));
        c.sentences = std::move(work);
      }, py::arg("script"), "Applies an edit script in place; all or nothing per call.")
      .def("validate", [](const Corpus& c) {
        std::vector<std::tuple<std::size_t, std::string, std::string>> out;
        for (std::size_t i = 0; i < c.sentences.size(); ++i) {
          for (const auto& v : tg::validate(c.sentences[i].graph)) out.emplace_back(i, v.subject, v.rule);
        }
        return out;
      })
      .def("bracket", [](const Corpus& c, std::size_t i) {
        const f::Sentence& s = sentence(c.sentences, i);
        return tg::to_bracket_string(tg::constituency::read_tree(s.graph, s.root));
      }, py::arg("index"))
      .def("words", [](const Corpus& c, std::size_t i) {
        return tg::constituency::surface(sentence(c.sentences, i).graph);
      }, py::arg("index"));
}
