#include "radex/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "radex/text_util.hpp"

namespace radex {

namespace {

const char* const kParentNames[kAnatomyParentCount] = {
    "Neurological",
    "Cardiovascular",
    "Thoracic",
    "Respiratory",
    "Digestive",
    "Hepato-Biliary",
    "Urinary",
    "Lymphatic",
    "F Reproductive Obstetric",
    "M Reproductive",
    "Musculo-Skeletal",
    "Body Regions",
    "Head Neck",
    "Skin",
    "Abdomen",
    "Miscellaneous",
};

std::vector<Ontology::ParentEntry> builtin_parents() {
  return {
      {"Neurological",
       {"Undetermined", "Spine Cervical", "Spine Thoracic", "Spine Lumbar", "Spine Sacral",
        "Spine Cord", "Spine Unspecified", "Brain", "Nerve", "Pituitary",
        "Cerebrospinal Fluid Pathway", "Cerebrovascular System", "Extraaxial"}},
      {"Cardiovascular",
       {"Undetermined", "Venous", "Arterial", "Pulmonary Artery", "Heart", "Pericardial Sac",
        "Coronary Artery"}},
      {"Thoracic", {"Undetermined", "Mediastinal"}},
      {"Respiratory", {"Undetermined", "Lung", "Pleural Membrane", "Tracheobronchial"}},
      {"Digestive",
       {"Undetermined", "Esophagus", "Stomach", "Intestine", "Small Intestine",
        "Large Intestine"}},
      {"Hepato-Biliary", {"Undetermined", "Gallblader", "Bile Duct", "Pancreas", "Liver"}},
      {"Urinary", {"Undetermined", "Kidney", "Urinary Bladder", "Ureter"}},
      {"Lymphatic", {"Undetermined"}},
      {"F Reproductive Obstetric",
       {"Undetermined", "Breast", "Ovary", "Uterus", "Adnexal", "Extra-embryonic", "Placenta",
        "Fetus", "Umbilical Cord", "Female Genital Structure"}},
      {"M Reproductive", {"Undetermined", "Prostate", "Testis", "Epididymis"}},
      {"Musculo-Skeletal",
       {"Undetermined", "Skeletal and or Smooth Muscle", "Bone and or Joint"}},
      {"Body Regions", {"Undetermined", "Entire Body", "Pelvis", "Lower Limb", "Upper Limb"}},
      {"Head Neck",
       {"Undetermined", "Thyroid", "Neck", "Ear", "Eye", "Mouth", "Nasal Sinus", "Pharynx",
        "Laryngeal"}},
      {"Skin", {"Undetermined", "Skin and or Mucous Membrane", "Subcutaneous"}},
      {"Abdomen",
       {"Undetermined", "Retroperitoneal", "Abdominal Wall", "Peritoneal Sac", "Spleen",
        "Adrenal Gland", "Mesentery"}},
      {"Miscellaneous",
       {"Undetermined", "Adipose Tissue", "Connective Tissue", "Biomedical Device"}},
  };
}

// Anatomy filter terms as printed, stop words removed.
const char* const kFilterTerms[] = {
    "Spine Cervical", "Spine Thoracic", "Spine Lumbar", "Spine Sacral", "Spine Cord", "Spine",
    "Brain", "Nerve", "Pituitary", "Cerebrospinal", "Cerebrovascular", "Extraaxial",
    "Venous", "Arterial", "Pulmonary Artery", "Heart", "Pericardial Sac", "Coronary Artery",
    "Mediastinal",
    "Lung", "Pleural Membrane", "Tracheobronchial",
    "Esophagus", "Stomach", "Intestine",
    "Gallbladder", "Bile", "Pancreas", "Liver",
    "Kidney", "Urinary Bladder", "Ureter",
    "Breast", "Ovary", "Uterus", "Adnexal", "Extra-embryonic", "Placenta", "Fetus",
    "Umbilical Cord", "Genital Structure", "Prostate", "Testis", "Epididymis",
    "Skeletal", "Smooth Muscle", "Bone", "Pelvis", "Limb",
    "Thyroid", "Neck", "Ear", "Eye", "Mouth", "Nasal Sinus", "Pharynx", "Laryngeal",
    "Skin", "Mucous Membrane", "Subcutaneous",
    "Retroperitoneal", "Abdominal", "Peritoneal Sac", "Spleen", "Adrenal", "Mesentery",
    "Adipose", "Chest", "Mediastinum", "Osseous", "Bones", "Extremities", "Lungs",
    "Musculoskeletal", "Ventricular", "Bowel", "Pleura", "Vasculature", "Thorax",
    "Kidneys", "Adrenals", "Cardio",
};

std::string canonical(std::string_view text) { return collapse_whitespace(text); }

}  // namespace

std::string to_string(TriggerType type) {
  switch (type) {
    case TriggerType::Indication: return "Indication";
    case TriggerType::Lesion: return "Lesion";
    case TriggerType::MedicalProblem: return "Medical_Problem";
  }
  return {};
}

std::optional<TriggerType> trigger_type_from_string(std::string_view text) {
  std::string t = canonical(text);
  if (t == "Indication") return TriggerType::Indication;
  if (t == "Lesion") return TriggerType::Lesion;
  if (t == "Medical_Problem") return TriggerType::MedicalProblem;
  return std::nullopt;
}

std::string to_string(AnatomyParent parent) {
  return kParentNames[static_cast<std::size_t>(parent)];
}

std::optional<AnatomyParent> anatomy_parent_from_string(std::string_view text) {
  std::string t = canonical(text);
  for (std::size_t i = 0; i < kAnatomyParentCount; ++i) {
    if (t == kParentNames[i]) return static_cast<AnatomyParent>(i);
  }
  return std::nullopt;
}

TermList::TermList(std::vector<std::string> terms) {
  if (terms.empty()) throw std::invalid_argument("TermList must be non-empty");
  std::unordered_set<std::string> seen;
  for (auto& term : terms) {
    std::string key = to_lower_ascii(canonical(term));
    if (key.empty()) continue;
    if (seen.insert(key).second) terms_.push_back(canonical(term));
  }
  if (terms_.empty()) throw std::invalid_argument("TermList must be non-empty");
}

bool TermList::contains(std::string_view term) const {
  std::string key = to_lower_ascii(canonical(term));
  return std::any_of(terms_.begin(), terms_.end(), [&](const std::string& t) {
    return to_lower_ascii(t) == key;
  });
}

TermList default_term_list() {
  std::vector<std::string> terms(std::begin(kFilterTerms), std::end(kFilterTerms));
  return TermList(std::move(terms));
}

Ontology::Ontology(std::vector<ParentEntry> parents) : parents_(std::move(parents)) {}

Ontology Ontology::builtin() { return Ontology(builtin_parents()); }

Ontology Ontology::from_json_text(std::string_view json_text) {
  nlohmann::json doc = nlohmann::json::parse(json_text);
  if (!doc.is_object()) throw std::runtime_error("ontology JSON must be an object");
  std::vector<ParentEntry> parents;
  for (auto& [name, children] : doc.items()) {
    ParentEntry entry;
    entry.name = canonical(name);
    if (!children.is_array()) throw std::runtime_error("ontology children must be arrays");
    for (const auto& child : children) {
      entry.children.push_back(canonical(child.get<std::string>()));
    }
    parents.push_back(std::move(entry));
  }
  return Ontology(std::move(parents));
}

Ontology Ontology::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ontology file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::size_t Ontology::pair_count() const {
  std::size_t n = 0;
  for (const auto& p : parents_) n += p.children.size();
  return n;
}

std::size_t Ontology::distinct_child_count() const {
  std::unordered_set<std::string> names;
  for (const auto& p : parents_) {
    for (const auto& c : p.children) names.insert(c);
  }
  return names.size();
}

bool Ontology::has_parent(std::string_view name) const {
  std::string t = canonical(name);
  return std::any_of(parents_.begin(), parents_.end(),
                     [&](const ParentEntry& p) { return p.name == t; });
}

bool Ontology::has_child(std::string_view parent, std::string_view child) const {
  std::string p = canonical(parent);
  std::string c = canonical(child);
  for (const auto& entry : parents_) {
    if (entry.name == p) {
      return std::find(entry.children.begin(), entry.children.end(), c) != entry.children.end();
    }
  }
  return false;
}

bool Ontology::has_child_anywhere(std::string_view child) const {
  std::string c = canonical(child);
  for (const auto& entry : parents_) {
    if (std::find(entry.children.begin(), entry.children.end(), c) != entry.children.end()) {
      return true;
    }
  }
  return false;
}

AnatomyLabel Ontology::parse_label(std::string_view text, bool lowercase_fallback) const {
  std::string flat(text);
  auto bar = flat.find('|');
  if (bar == std::string::npos || flat.find('|', bar + 1) != std::string::npos) {
    throw LabelError(LabelErrorKind::BadFormat,
                     "label must be \"<parent> | <child>\": " + flat);
  }
  std::string parent = canonical(flat.substr(0, bar));
  std::string child = canonical(flat.substr(bar + 1));

  auto find_parent = [&](const std::string& name) -> const ParentEntry* {
    for (const auto& entry : parents_) {
      if (entry.name == name) return &entry;
      if (lowercase_fallback && to_lower_ascii(entry.name) == to_lower_ascii(name)) {
        return &entry;
      }
    }
    return nullptr;
  };

  const ParentEntry* entry = find_parent(parent);
  if (entry == nullptr) {
    throw LabelError(LabelErrorKind::UnknownParent, "unknown parent: " + parent);
  }
  auto match_child = [&](const std::string& c) -> const std::string* {
    for (const auto& known : entry->children) {
      if (known == c) return &known;
      if (lowercase_fallback && to_lower_ascii(known) == to_lower_ascii(c)) return &known;
    }
    return nullptr;
  };
  if (const std::string* c = match_child(child)) return {entry->name, *c};
  if (has_child_anywhere(child)) {
    throw LabelError(LabelErrorKind::ChildNotUnderParent,
                     "child \"" + child + "\" is not under parent \"" + parent + "\"");
  }
  throw LabelError(LabelErrorKind::UnknownChild, "unknown child: " + child);
}

std::string render_trigger_ontology() { return "Indication | Lesion | Medical_Problem"; }

std::string Ontology::render(OntologyKind kind) const {
  if (kind == OntologyKind::Trigger) return render_trigger_ontology();
  std::string anatomy;
  for (const auto& entry : parents_) {
    if (!anatomy.empty()) anatomy += " ";
    anatomy += entry.name + ":";
    for (std::size_t i = 0; i < entry.children.size(); ++i) {
      anatomy += (i == 0 ? " " : ", ") + entry.children[i];
    }
  }
  if (kind == OntologyKind::Anatomy) return anatomy;
  return "trigger types: " + render_trigger_ontology() + " anatomy categories: " + anatomy;
}

std::vector<AnatomyLabel> Ontology::all_labels() const {
  std::vector<AnatomyLabel> labels;
  for (const auto& entry : parents_) {
    for (const auto& child : entry.children) labels.push_back({entry.name, child});
  }
  return labels;
}

}  // namespace radex
