#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sftok {

enum class TaskKind { open_ended, multiple_choice, text_generation };

std::string_view to_string(TaskKind kind) noexcept;
TaskKind parse_task_kind(std::string_view text);

inline constexpr std::string_view kOpenEndedInstruction = "Answer the question precisely based on the input";
inline constexpr std::string_view kMultipleChoiceInstruction = "Select the best option to answer the question";
inline constexpr std::string_view kInputDataPrompt = "The input consists of a sequence of key frames from a video";
inline constexpr std::string_view kMultipleChoiceAnswerPrefix = "Best Option:(";
inline constexpr std::string_view kOpenEndedAnswerPrefix = "In this video,";

/// Three-part prompt toggles plus the question. options must be non-empty
/// exactly when the task is multiple choice.
struct PromptBundle {
  TaskKind task_kind = TaskKind::open_ended;
  bool include_task_instruction = false;
  bool include_input_data = true;
  bool include_structured_answer = true;
  std::string question;
  std::vector<std::string> options;

  /// Task instruction only for multiple choice; input data and structured
  /// answer for every task.
  static PromptBundle with_defaults(TaskKind kind, std::string question, std::vector<std::string> options = {});
};

/// Text before and after the single visual-token span.
struct AssembledInput {
  std::string pre_visual_text;
  std::string post_visual_text;
};

std::string_view task_instruction(TaskKind kind) noexcept;
std::string_view answer_prefix(TaskKind kind) noexcept;

/// Throws MissingOptions / UnexpectedOptions / InvalidArgument (empty question).
AssembledInput build_prompt(const PromptBundle& bundle);

/// Pre-visual text, the literal line "<VISUAL_TOKENS n=...>", then post-visual text.
std::string render_prompt(const AssembledInput& input, std::size_t visual_tokens);

/// 'A' + index.
char option_letter(std::size_t index);

/// 0-based option index of the first standalone letter, after an optional
/// "Best Option:" prefix. Case-insensitive. Throws Unparseable or OutOfRange;
/// n_options must be in [2, 26].
std::size_t parse_choice(std::string_view answer_text, std::size_t n_options);

}  // namespace sftok
