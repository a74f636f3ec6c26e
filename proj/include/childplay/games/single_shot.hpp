#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "childplay/chem/gts.hpp"
#include "childplay/core/game.hpp"
#include "childplay/core/rng.hpp"
#include "childplay/games/shapes.hpp"
#include "childplay/games/tictactoe.hpp"
#include "childplay/lcl/lcl.hpp"
#include "childplay/players/move_parser.hpp"
#include "childplay/players/prompts.hpp"

namespace childplay {

enum class Judgement : std::uint8_t { Correct, Incorrect, Invalid };

inline std::string_view to_string(Judgement j) {
  switch (j) {
    case Judgement::Correct: return "correct";
    case Judgement::Incorrect: return "incorrect";
    case Judgement::Invalid: return "invalid";
  }
  return "?";
}

/// One question, one answer from P1. Draws its puzzle from `seed` on reset.
class SingleShotGame : public Game {
 public:
  explicit SingleShotGame(std::uint64_t seed, bool strict) : seed_(seed), strict_(strict) {}

  int player_count() const override { return 1; }
  GameStatus status() const override { return status_; }
  PlayerId to_move() const override { return PlayerId::P1; }

  bool is_legal(PlayerId, std::string_view raw) const override { return judge(raw) != Judgement::Invalid; }

  MoveOutcome apply(PlayerId player, std::string_view raw) override {
    detail::require_turn(status_, PlayerId::P1, player);
    judgement_ = judge(raw);
    answer_ = std::string(raw);
    on_answer(raw);
    switch (*judgement_) {
      case Judgement::Correct:
        status_ = GameStatus::won_by(PlayerId::P1);
        return MoveOutcome::Win;
      case Judgement::Incorrect:
        status_ = GameStatus::won_by(PlayerId::P2);
        return MoveOutcome::Accepted;
      case Judgement::Invalid: break;
    }
    status_ = GameStatus::forfeited_by(PlayerId::P1);
    return MoveOutcome::WrongMove;
  }

  void reset() override {
    status_ = GameStatus::running();
    judgement_.reset();
    answer_.reset();
    Rng rng(seed_);
    draw(rng);
  }

  std::optional<Judgement> judgement() const { return judgement_; }
  const std::optional<std::string>& answer() const { return answer_; }
  std::uint64_t seed() const { return seed_; }

 protected:
  virtual void draw(Rng& rng) = 0;
  virtual Judgement judge(std::string_view raw) const = 0;
  virtual void on_answer(std::string_view) {}
  bool strict() const { return strict_; }

 private:
  std::uint64_t seed_;
  bool strict_;
  GameStatus status_;
  std::optional<Judgement> judgement_;
  std::optional<std::string> answer_;
};

class ShapesGame final : public SingleShotGame {
 public:
  ShapesGame(std::uint64_t seed, int board_size = 15, std::optional<shapes::ShapeKind> forced = std::nullopt,
             bool strict = false)
      : SingleShotGame(seed, strict), size_(board_size), forced_(forced) {
    reset();
  }

  GameKind kind() const override { return GameKind::Shapes; }
  std::string text_state(PlayerId) const override { return shapes::render_board(board_); }
  std::string intro_prompt() const override { return shapes::shape_intro_prompt(size_); }
  std::vector<std::string> legal_moves(PlayerId) const override {
    if (status().over) return {};
    std::vector<std::string> out;
    for (auto k : board_.answer_options) out.emplace_back(shapes::to_string(k));
    return out;
  }
  std::unique_ptr<Game> clone() const override { return std::make_unique<ShapesGame>(*this); }

  const shapes::ShapeBoard& board() const { return board_; }

 protected:
  void draw(Rng& rng) override { board_ = shapes::play_shape_round(rng, size_, forced_).first; }
  Judgement judge(std::string_view raw) const override {
    switch (shapes::judge_shape_answer(board_, raw)) {
      case shapes::Judgement::Correct: return Judgement::Correct;
      case shapes::Judgement::Incorrect: return Judgement::Incorrect;
      case shapes::Judgement::Unparsable: break;
    }
    return Judgement::Invalid;
  }

 private:
  int size_;
  std::optional<shapes::ShapeKind> forced_;
  shapes::ShapeBoard board_;
};

/// Is this brick assembly valid? `expected` fixed or drawn by coin flip.
class LclValidityGame final : public SingleShotGame {
 public:
  LclValidityGame(std::uint64_t seed, int n_pieces = 3, std::optional<bool> expected = std::nullopt,
                  bool strict = false)
      : SingleShotGame(seed, strict), n_pieces_(n_pieces), forced_(expected) {
    reset();
  }

  GameKind kind() const override { return GameKind::LclValidity; }
  std::string text_state(PlayerId) const override { return lcl::format_construct(construct_) + "\n"; }
  std::string intro_prompt() const override {
    return prompts::render_prompt(prompts::kLclValidity, {{"pieces", lcl::format_construct(construct_)}});
  }
  bool prompt_embeds_state() const override { return true; }
  std::vector<std::string> legal_moves(PlayerId) const override {
    if (status().over) return {};
    return {"valid", "invalid"};
  }
  std::unique_ptr<Game> clone() const override { return std::make_unique<LclValidityGame>(*this); }

  const lcl::Construct& construct() const { return construct_; }
  bool expected_validity() const { return expected_; }

 protected:
  void draw(Rng& rng) override {
    expected_ = forced_ ? *forced_ : rng.bernoulli(0.5);
    construct_ = expected_ ? lcl::generate_valid_construct(n_pieces_, rng)
                           : lcl::generate_invalid_construct(n_pieces_, rng).construct;
  }
  Judgement judge(std::string_view raw) const override {
    const auto parsed = parse_move(GameKind::LclValidity, raw, strict());
    if (!parsed) return Judgement::Invalid;
    return std::get<VerdictMove>(*parsed).valid == expected_ ? Judgement::Correct : Judgement::Incorrect;
  }

 private:
  int n_pieces_;
  std::optional<bool> forced_;
  bool expected_ = true;
  lcl::Construct construct_;
};

/// Build any valid assembly of exactly `n_pieces` bricks.
class LclGenerationGame final : public SingleShotGame {
 public:
  LclGenerationGame(std::uint64_t seed, int n_pieces = 3, bool strict = false)
      : SingleShotGame(seed, strict), n_pieces_(n_pieces) {
    reset();
  }

  GameKind kind() const override { return GameKind::LclGeneration; }
  std::string text_state(PlayerId) const override { return "pieces: " + std::to_string(n_pieces_) + "\n"; }
  std::string intro_prompt() const override {
    return prompts::render_prompt(prompts::kLclGeneration, {{"n_pieces", std::to_string(n_pieces_)}});
  }
  bool prompt_embeds_state() const override { return true; }
  std::vector<std::string> legal_moves(PlayerId) const override { return {}; }
  std::unique_ptr<Game> clone() const override { return std::make_unique<LclGenerationGame>(*this); }

  /// Random bricks scattered near the origin; usually not a valid answer.
  std::string random_move(PlayerId, Rng& rng) const override {
    lcl::Construct c;
    for (int i = 0; i < n_pieces_; ++i)
      c.push_back({static_cast<int>(rng.uniform_int(-4, 8)), static_cast<int>(rng.uniform_int(0, 2)), lcl::random_color(rng)});
    return lcl::format_construct(c);
  }

  int n_pieces() const { return n_pieces_; }
  const std::optional<lcl::Construct>& submitted() const { return submitted_; }

 protected:
  void draw(Rng&) override { submitted_.reset(); }
  Judgement judge(std::string_view raw) const override {
    const auto c = construct_of(raw);
    if (!c) return Judgement::Invalid;
    return static_cast<int>(c->size()) == n_pieces_ && lcl::is_valid_construct(*c).valid ? Judgement::Correct
                                                                                           : Judgement::Incorrect;
  }
  void on_answer(std::string_view raw) override { submitted_ = construct_of(raw); }

 private:
  std::optional<lcl::Construct> construct_of(std::string_view raw) const {
    try {
      const auto parsed = parse_move(GameKind::LclGeneration, raw, strict());
      if (!parsed) return std::nullopt;
      return std::get<ConstructMove>(*parsed).construct;
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }

  int n_pieces_;
  std::optional<lcl::Construct> submitted_;
};

/// Guess-the-SMILES: name the molecule drawn in ASCII.
class GtsGame final : public SingleShotGame {
 public:
  GtsGame(std::uint64_t seed, chem::SampleOptions options = {}, bool strict = false)
      : SingleShotGame(seed, strict), options_(options) {
    reset();
  }

  GameKind kind() const override { return GameKind::Gts; }
  std::string text_state(PlayerId) const override { return puzzle_.depiction.text(); }
  std::string intro_prompt() const override { return chem::gts_intro_prompt(); }
  std::vector<std::string> legal_moves(PlayerId) const override { return {}; }
  std::unique_ptr<Game> clone() const override { return std::make_unique<GtsGame>(*this); }

  /// Canonical SMILES of an unrelated random molecule.
  std::string random_move(PlayerId, Rng& rng) const override {
    return chem::canonical_smiles(chem::sample_molecule(rng, options_));
  }

  const chem::GtsPuzzle& puzzle() const { return puzzle_; }
  const std::optional<chem::GtsScore>& score() const { return score_; }

 protected:
  void draw(Rng& rng) override {
    puzzle_ = chem::make_puzzle(rng, options_);
    score_.reset();
  }
  Judgement judge(std::string_view raw) const override {
    const auto s = chem::evaluate_prediction(puzzle_.molecule, raw);
    if (!s.valid) return Judgement::Invalid;
    return s.correct ? Judgement::Correct : Judgement::Incorrect;
  }
  void on_answer(std::string_view raw) override { score_ = chem::evaluate_prediction(puzzle_.molecule, raw); }

 private:
  chem::SampleOptions options_;
  chem::GtsPuzzle puzzle_;
  std::optional<chem::GtsScore> score_;
};

}  // namespace childplay
