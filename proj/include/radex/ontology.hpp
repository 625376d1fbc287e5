#ifndef RADEX_ONTOLOGY_HPP
#define RADEX_ONTOLOGY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace radex {

// Event trigger types. Textual form uses "Medical_Problem".
enum class TriggerType { Indication, Lesion, MedicalProblem };

std::string to_string(TriggerType type);
std::optional<TriggerType> trigger_type_from_string(std::string_view text);

// The 16 parent-level anatomy categories of the built-in hierarchy.
enum class AnatomyParent {
  Neurological,
  Cardiovascular,
  Thoracic,
  Respiratory,
  Digestive,
  HepatoBiliary,
  Urinary,
  Lymphatic,
  FReproductiveObstetric,
  MReproductive,
  MusculoSkeletal,
  BodyRegions,
  HeadNeck,
  Skin,
  Abdomen,
  Miscellaneous,
};

inline constexpr std::size_t kAnatomyParentCount = 16;

std::string to_string(AnatomyParent parent);
std::optional<AnatomyParent> anatomy_parent_from_string(std::string_view text);

// A validated (parent, child) pair. Stored as canonical strings so that
// ontologies loaded from JSON can extend the parent set.
struct AnatomyLabel {
  std::string parent;
  std::string child;

  bool operator==(const AnatomyLabel&) const = default;
};

enum class LabelErrorKind { BadFormat, UnknownParent, UnknownChild, ChildNotUnderParent };

class LabelError : public std::runtime_error {
 public:
  LabelError(LabelErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  LabelErrorKind kind() const { return kind_; }

 private:
  LabelErrorKind kind_;
};

enum class OntologyKind { Trigger, Anatomy, Joint };

// Anatomy filter terms with case-insensitive whole-word semantics;
// deduplicated after lowercasing, original order kept.
class TermList {
 public:
  explicit TermList(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const { return terms_; }
  bool contains(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
};

TermList default_term_list();

// Trigger types plus the hierarchical anatomy categories. Immutable after
// construction; safe for unrestricted concurrent reads.
class Ontology {
 public:
  struct ParentEntry {
    std::string name;
    std::vector<std::string> children;
  };

  // The built-in 16-parent hierarchy. Note the built-in child list keeps
  // the source spelling "Gallblader" while the filter term list uses
  // "Gallbladder"; both are intentional.
  static Ontology builtin();

  // parents -> child arrays, e.g. {"Respiratory": ["Undetermined", "Lung"]}.
  static Ontology from_json_file(const std::string& path);
  static Ontology from_json_text(std::string_view json_text);

  const std::vector<ParentEntry>& parents() const { return parents_; }

  std::size_t pair_count() const;
  std::size_t distinct_child_count() const;

  bool has_parent(std::string_view name) const;
  bool has_child(std::string_view parent, std::string_view child) const;
  bool has_child_anywhere(std::string_view child) const;

  // Parses "<parent> | <child>". Whitespace-tolerant, case-sensitive on
  // canonical names; set lowercase_fallback to accept case drift.
  AnatomyLabel parse_label(std::string_view text, bool lowercase_fallback = false) const;

  std::string render(OntologyKind kind) const;

  std::vector<AnatomyLabel> all_labels() const;

 private:
  explicit Ontology(std::vector<ParentEntry> parents);

  std::vector<ParentEntry> parents_;
};

std::string render_trigger_ontology();

}  // namespace radex

#endif  // RADEX_ONTOLOGY_HPP
