#include "msgplan/surface.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "msgplan/discourse.hpp"

namespace msgplan {

std::string RealizedMessage::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

std::vector<ActionId> RealizedMessage::mentions() const {
  std::vector<ActionId> out;
  for (const auto& s : sentences) out.insert(out.end(), s.mentions.begin(), s.mentions.end());
  return out;
}

int RealizedMessage::noun_phrases() const {
  int n = 0;
  for (const auto& s : sentences) n += static_cast<int>(s.mentions.size()) + s.goal_mentions;
  return n;
}

std::string join_list(const std::vector<std::string>& items) {
  if (items.empty()) return {};
  if (items.size() == 1) return items[0];
  if (items.size() == 2) return items[0] + " and " + items[1];
  std::string out;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) out += items[i] + ", ";
  return out + "and " + items.back();
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string lowercase_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

namespace {

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::string drop_words(const std::string& s, std::size_t n) {
  auto w = words(s);
  std::string out;
  for (std::size_t i = n; i < w.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += w[i];
  }
  return out;
}

std::string indefinite_for(std::string_view next) {
  if (!next.empty() && std::string_view("aeiouAEIOU").find(next.front()) != std::string_view::npos)
    return "an";
  return "a";
}

std::string fill_article(const std::string& tmpl, Article art) {
  const auto pos = tmpl.find(kArticleSlot);
  if (pos == std::string::npos) return tmpl;
  std::string after = tmpl.substr(pos + kArticleSlot.size());
  const auto first = after.find_first_not_of(' ');
  const std::string_view rest =
      first == std::string::npos ? std::string_view{} : std::string_view(after).substr(first);
  std::string word;
  switch (art) {
    case Article::Definite: word = "the"; break;
    case Article::Indefinite: word = indefinite_for(rest); break;
    case Article::None: break;
  }
  std::string out = tmpl.substr(0, pos) + word + after;
  // Collapse the double space an empty article leaves behind.
  for (auto p = out.find("  "); p != std::string::npos; p = out.find("  ")) out.erase(p, 1);
  return out;
}

}  // namespace

std::string PhraseBuilder::render(const ActionId& a, VerbForm form) {
  const LexiconEntry& e = lexicon_.entry(a);
  const Article art = choose_article(state_, a, lexicon_);
  std::string out = fill_article(form == VerbForm::Imperative ? e.imperative : e.gerund, art);
  state_ = note_mention(std::move(state_), a);
  pending_.push_back(a);
  return out;
}

std::string PhraseBuilder::action(const ActionId& a, VerbForm form) { return render(a, form); }

std::string PhraseBuilder::noun_phrase(const ActionId& a) {
  const LexiconEntry& e = lexicon_.entry(a);
  if (!e.has_article) return render(a, VerbForm::Gerund);
  const std::string full = render(a, VerbForm::Imperative);
  // Everything from the article slot onward.
  const auto tw = words(e.imperative);
  std::size_t idx = 0;
  while (idx < tw.size() && tw[idx] != kArticleSlot) ++idx;
  return drop_words(full, idx);
}

std::vector<std::string> PhraseBuilder::common_prefix(const std::vector<ActionId>& actions,
                                                      VerbForm form) const {
  if (actions.size() < 2) return {};
  std::vector<std::vector<std::string>> all;
  for (const auto& a : actions) {
    const LexiconEntry& e = lexicon_.entry(a);
    all.push_back(words(form == VerbForm::Imperative ? e.imperative : e.gerund));
  }
  std::vector<std::string> prefix;
  for (std::size_t i = 0;; ++i) {
    for (const auto& w : all)
      if (i + 1 >= w.size() || w[i] == kArticleSlot || w[i] != all[0][i]) return prefix;
    prefix.push_back(all[0][i]);
  }
}

std::string PhraseBuilder::action_without_prefix(const ActionId& a, VerbForm form,
                                                 std::size_t skip) {
  return drop_words(render(a, form), skip);
}

std::string PhraseBuilder::goal_gerund(const GoalId& g) {
  ++goal_mentions_;
  return lexicon_.goal(g).gerund;
}

std::string PhraseBuilder::goal_infinitive(const GoalId& g) {
  ++goal_mentions_;
  return lexicon_.goal(g).infinitive;
}

RealizedSentence PhraseBuilder::finish(std::string text) {
  RealizedSentence s{std::move(text), std::move(pending_), goal_mentions_};
  pending_.clear();
  goal_mentions_ = 0;
  return s;
}

}  // namespace msgplan
