#include "sftok/prompting.hpp"

#include <cctype>
#include <string>

#include "sftok/error.hpp"

namespace sftok {
namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

bool iequals_prefix(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(text[i])) != std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  return true;
}

void append_line(std::string& text, std::string_view line) {
  if (!text.empty()) text += '\n';
  text += line;
}

}  // namespace

std::string_view to_string(TaskKind kind) noexcept {
  switch (kind) {
    case TaskKind::open_ended: return "open_ended";
    case TaskKind::multiple_choice: return "multiple_choice";
    case TaskKind::text_generation: return "text_generation";
  }
  return "open_ended";
}

TaskKind parse_task_kind(std::string_view text) {
  if (text == "open_ended") return TaskKind::open_ended;
  if (text == "multiple_choice") return TaskKind::multiple_choice;
  if (text == "text_generation") return TaskKind::text_generation;
  throw Error(ErrorCode::InvalidArgument, "unknown task kind '" + std::string(text) + "'");
}

PromptBundle PromptBundle::with_defaults(TaskKind kind, std::string question, std::vector<std::string> options) {
  PromptBundle b;
  b.task_kind = kind;
  b.include_task_instruction = kind == TaskKind::multiple_choice;
  b.include_input_data = true;
  b.include_structured_answer = true;
  b.question = std::move(question);
  b.options = std::move(options);
  return b;
}

std::string_view task_instruction(TaskKind kind) noexcept {
  return kind == TaskKind::multiple_choice ? kMultipleChoiceInstruction : kOpenEndedInstruction;
}

std::string_view answer_prefix(TaskKind kind) noexcept {
  return kind == TaskKind::multiple_choice ? kMultipleChoiceAnswerPrefix : kOpenEndedAnswerPrefix;
}

char option_letter(std::size_t index) {
  if (index >= 26) throw Error(ErrorCode::OutOfRange, "option index " + std::to_string(index) + " > 25");
  return static_cast<char>('A' + index);
}

AssembledInput build_prompt(const PromptBundle& bundle) {
  const bool mc = bundle.task_kind == TaskKind::multiple_choice;
  if (mc && bundle.options.empty()) throw Error(ErrorCode::MissingOptions, "multiple choice needs options");
  if (!mc && !bundle.options.empty())
    throw Error(ErrorCode::UnexpectedOptions, std::string(to_string(bundle.task_kind)) + " takes no options");
  if (bundle.options.size() > 26) throw Error(ErrorCode::OutOfRange, "at most 26 options");
  if (bundle.question.empty()) throw Error(ErrorCode::InvalidArgument, "question is empty");

  AssembledInput out;
  if (bundle.include_task_instruction) append_line(out.pre_visual_text, std::string(task_instruction(bundle.task_kind)) + ".");
  if (bundle.include_input_data) append_line(out.pre_visual_text, std::string(kInputDataPrompt) + ".");

  out.post_visual_text = bundle.question;
  for (std::size_t i = 0; i < bundle.options.size(); ++i)
    append_line(out.post_visual_text, std::string("(") + option_letter(i) + ") " + bundle.options[i]);
  if (bundle.include_structured_answer) append_line(out.post_visual_text, answer_prefix(bundle.task_kind));
  return out;
}

std::string render_prompt(const AssembledInput& input, std::size_t visual_tokens) {
  std::string text = input.pre_visual_text;
  append_line(text, "<VISUAL_TOKENS n=" + std::to_string(visual_tokens) + ">");
  append_line(text, input.post_visual_text);
  text += '\n';
  return text;
}

std::size_t parse_choice(std::string_view answer_text, std::size_t n_options) {
  if (n_options < 2 || n_options > 26)
    throw Error(ErrorCode::InvalidArgument, "n_options " + std::to_string(n_options) + " not in [2, 26]");

  std::string_view text = answer_text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  constexpr std::string_view kPrefix = "Best Option:";
  if (iequals_prefix(text, kPrefix)) text.remove_prefix(kPrefix.size());

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isalpha(static_cast<unsigned char>(c))) continue;
    const bool alone = (i == 0 || !is_word_char(text[i - 1])) && (i + 1 == text.size() || !is_word_char(text[i + 1]));
    if (!alone) continue;
    const auto index = static_cast<std::size_t>(std::toupper(static_cast<unsigned char>(c)) - 'A');
    if (index >= n_options)
      throw Error(ErrorCode::OutOfRange, std::string("option '") + c + "' beyond " + std::to_string(n_options) +
                                             " options");
    return index;
  }
  throw Error(ErrorCode::Unparseable, "no option letter in '" + std::string(answer_text) + "'");
}

}  // namespace sftok
