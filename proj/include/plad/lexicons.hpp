#pragma once

#include <string>
#include <vector>

// Small curated CJK/English word lists shared by the synthetic corpus
// generator and the mock scoring backend. Both sides count the same surface
// markers, so generated style knobs stay measurable offline.

namespace plad::lexicons {

const std::vector<std::string>& first_person();
const std::vector<std::string>& second_person();
const std::vector<std::string>& disfluency();
const std::vector<std::string>& connective();
const std::vector<std::string>& sensory();
const std::vector<std::string>& temporal();
const std::vector<std::string>& hedge();
const std::vector<std::string>& emotive();
const std::vector<std::string>& empathy();
const std::vector<std::string>& value();
const std::vector<std::string>& interjection();
const std::vector<std::string>& greeting();
const std::vector<std::string>& narrative();
const std::vector<std::string>& perspective();
const std::vector<std::string>& demonstrative();
const std::vector<std::string>& emoji();

/// Shared content vocabulary (common hanzi plus filler Latin words).
const std::vector<std::string>& base_vocabulary();

}  // namespace plad::lexicons
