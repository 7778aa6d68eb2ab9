// Regenerates the synthetic corpora bundled under data/.
//
//   make_fixtures <out-dir>
//
// Output is a pure function of the seeds below, so rerunning reproduces the
// committed files byte for byte.

#include <abstractrank/corpus.hpp>
#include <abstractrank/random.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace ar = abstractrank;
namespace fs = std::filesystem;

namespace {

using WordList = std::vector<std::string>;

// Eight anomaly classes, one vocabulary each.
const std::array<WordList, 8> kClassWords{{
    {"watercut", "bsw", "aquifer", "coning", "breakthrough", "brine", "salinity", "waterflood", "emulsion",
     "separator", "dehydration", "influx", "encroachment", "owc", "injector", "sweep", "waterdrive", "fingering",
     "imbibition", "watered"},
    {"dhsv", "valve", "closure", "spurious", "subsurface", "safety", "actuator", "hydraulic", "flapper", "shutdown",
     "esd", "umbilical", "signal", "failsafe", "solenoid", "trip", "interlock", "barrier", "completion", "tubing"},
    {"slugging", "slug", "riser", "pipeline", "liquid", "severe", "holdup", "terrain", "multiphase", "catcher",
     "topside", "flowline", "blowdown", "cyclic", "accumulation", "penetration", "stratified", "dip", "hilly",
     "intermittent"},
    {"instability", "oscillations", "casing", "heading", "density", "wave", "transient", "stability", "perturbation",
     "unstable", "limit", "bifurcation", "feedback", "controller", "frequency", "damping", "hysteresis", "chaotic",
     "surge", "periodic"},
    {"productivity", "skin", "damage", "fines", "migration", "permeability", "impairment", "decline", "index",
     "formation", "asphaltene", "deposition", "plugging", "stimulation", "acidizing", "wax", "paraffin", "drawdown",
     "sandface", "inflow"},
    {"choke", "restriction", "pck", "orifice", "opening", "critical", "chokes", "correlation", "bean", "erosion",
     "throttling", "upstream", "downstream", "sonic", "differential", "discharge", "coefficient", "gilbert",
     "adjustable", "seat"},
    {"scaling", "scale", "calcium", "carbonate", "barium", "sulfate", "inhibitor", "precipitation", "deposit",
     "squeeze", "mineral", "supersaturation", "crystal", "strontium", "dissolver", "incompatible", "seawater", "ions",
     "nucleation", "encrustation"},
    {"hydrate", "hydrates", "methane", "dissociation", "clathrate", "inhibition", "methanol", "glycol", "subcooling",
     "ice", "crystallization", "agglomeration", "antiagglomerant", "cage", "guest", "thermodynamic", "kinetic", "meg",
     "plug", "blockage"},
}};

const WordList kSharedWords{"well",   "wells",  "production", "field",  "oil",   "gas",      "pressure",
                            "flow",   "system", "data",       "analysis", "study", "paper",  "method",
                            "model",  "operation", "performance", "rate", "reservoir", "fluid"};

const WordList kFunctionWords{"the", "of", "and", "in", "to", "for", "with", "on", "by", "from"};

const std::set<std::string> kNotNouns{"spurious", "hydraulic", "failsafe", "severe", "multiphase", "topside", "cyclic",
                                      "stratified", "hilly", "intermittent", "transient", "unstable", "chaotic",
                                      "periodic", "critical", "upstream", "downstream", "sonic", "differential",
                                      "adjustable", "incompatible", "thermodynamic", "kinetic", "watered", "subsurface"};

const WordList& pick_list(ar::Rng& rng, const WordList& a, const WordList& b, double p_a) {
  return rng.uniform() < p_a ? a : b;
}

const std::string& pick(ar::Rng& rng, const WordList& words) { return words[rng.below(words.size())]; }

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Joins content words into a sentence, sprinkling function words between them.
std::string make_sentence(ar::Rng& rng, const std::vector<std::string>& content) {
  std::string out;
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (i > 0) {
      out += ' ';
      if (rng.uniform() < 0.25) out += pick(rng, kFunctionWords) + ' ';
    }
    out += content[i];
  }
  return capitalize(out) + '.';
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& l : lines) out << l << '\n';
  std::cout << "wrote " << path.string() << " (" << lines.size() << " lines)\n";
}

// 8 classes x 200 abstracts; 80% of content tokens from the class vocabulary,
// 20% from the shared pool.
std::vector<std::string> anomaly_corpus() {
  ar::Rng rng(20200801);
  std::vector<std::string> lines;
  for (int cls = 1; cls <= 8; ++cls) {
    for (int i = 0; i < 200; ++i) {
      std::string text;
      const auto n_sentences = 4 + rng.below(4);
      for (std::uint64_t s = 0; s < n_sentences; ++s) {
        std::vector<std::string> content;
        const auto len = 6 + rng.below(5);
        for (std::uint64_t t = 0; t < len; ++t)
          content.push_back(pick(rng, pick_list(rng, kClassWords[cls - 1], kSharedWords, 0.8)));
        if (!text.empty()) text += ' ';
        text += make_sentence(rng, content);
      }
      char id[32];
      std::snprintf(id, sizeof id, "a%d-%03d", cls, i);
      lines.push_back(ar::to_anomaly_record({id, text, cls, {}}));
    }
  }
  return lines;
}

// Three groups with disjoint vocabularies; the elbow of this corpus is k = 3.
std::vector<std::string> blobs_corpus() {
  const std::array<WordList, 3> groups{{
      {"sand", "quartz", "grain", "gravel", "screen", "silt", "clay", "pack", "sieve", "particle", "mesh", "filter"},
      {"corrosion", "steel", "alloy", "pitting", "coating", "anode", "cathode", "rust", "oxide", "metal", "weld",
       "crack"},
      {"seismic", "survey", "reflection", "velocity", "wavelet", "impedance", "horizon", "fault", "stack", "amplitude",
       "geophone", "trace"},
  }};
  ar::Rng rng(7);
  std::vector<std::string> lines;
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> content;
      for (int t = 0; t < 15; ++t) content.push_back(pick(rng, groups[g]));
      char id[32];
      std::snprintf(id, sizeof id, "b%d-%02d", g + 1, i);
      lines.push_back(ar::to_anomaly_record({id, make_sentence(rng, content), g + 1, {}}));
    }
  }
  return lines;
}

const WordList kProblemCues{"aim", "objective", "problem", "challenge", "purpose", "investigate", "address", "motivation"};
const WordList kMethodCues{"procedure", "approach", "simulation", "experiment", "developed", "proposed", "apparatus",
                           "technique"};
const WordList kResultCues{"showed", "results", "indicate", "demonstrated", "found", "achieved", "observed", "concluded"};

// Structured abstracts labelled with the five section names; problem sentences
// open the abstract, results close it, and every sentence carries cue words.
std::vector<std::string> segmentation_corpus() {
  ar::Rng rng(4242);
  std::vector<std::string> lines;
  for (int d = 0; d < 300; ++d) {
    const auto n_problem = 1 + rng.below(2), n_method = 1 + rng.below(3), n_result = 1 + rng.below(3);
    nlohmann::ordered_json rec;
    char id[32];
    std::snprintf(id, sizeof id, "s%03d", d);
    rec["id"] = id;
    auto sentences = nlohmann::ordered_json::array();
    auto add = [&](const WordList& cues, const std::string& label) {
      std::vector<std::string> content;
      const auto len = 6 + rng.below(5);
      for (std::uint64_t t = 0; t < len; ++t) {
        if (t < 2) {
          content.push_back(pick(rng, cues));
        } else {
          const auto& cls = kClassWords[rng.below(8)];
          content.push_back(pick(rng, pick_list(rng, cls, kSharedWords, 0.5)));
        }
      }
      rng.shuffle(std::span<std::string>(content));
      sentences.push_back({{"text", make_sentence(rng, content)}, {"label", label}});
    };
    for (std::uint64_t i = 0; i < n_problem; ++i) add(kProblemCues, rng.uniform() < 0.5 ? "BACKGROUND" : "OBJECTIVE");
    for (std::uint64_t i = 0; i < n_method; ++i) add(kMethodCues, "METHODS");
    for (std::uint64_t i = 0; i < n_result; ++i) add(kResultCues, rng.uniform() < 0.5 ? "RESULTS" : "CONCLUSIONS");
    rec["sentences"] = std::move(sentences);
    lines.push_back(rec.dump());
  }
  return lines;
}

const WordList kPositiveWords{"good",      "favourable", "successfully", "success",   "confident", "economical",
                              "reducing",  "efficient",  "reliable",     "excellent", "promising", "effective",
                              "improved",  "improvement", "benefits",    "robust",    "accurate",  "valuable",
                              "stable",    "safe",       "best",         "gains",     "optimal",   "strong"};
const WordList kNegativeWords{"poorly",     "limited",   "however",    "failure",     "failed",   "difficult",
                              "loss",       "unreliable", "uncertain", "inefficient", "costly",   "worse",
                              "poor",       "risk",      "inadequate", "hazardous",   "required", "insufficient",
                              "unclear",    "lower",     "problematic", "weak",       "concerns", "doubtful"};
const WordList kNeutralWords{"report",    "section",  "measurements", "process", "sample",  "values",
                             "equipment", "company",  "market",       "project", "quarter", "statement",
                             "region",    "schedule", "survey",       "team",    "network", "sector"};

// News-style sentences: positive and negative ones mix three polarity words
// with neutral filler; neutral ones use filler only.
std::vector<std::string> sentiment_corpus() {
  ar::Rng rng(99);
  std::vector<std::string> lines;
  const std::array<ar::Polarity, 3> order{ar::Polarity::Positive, ar::Polarity::Negative, ar::Polarity::Neutral};
  for (int i = 0; i < 360; ++i) {
    const auto polarity = order[static_cast<std::size_t>(i % 3)];
    std::vector<std::string> content;
    for (int t = 0; t < 4; ++t) content.push_back(pick(rng, kNeutralWords));
    if (polarity != ar::Polarity::Neutral) {
      const auto& pool = polarity == ar::Polarity::Positive ? kPositiveWords : kNegativeWords;
      for (int t = 0; t < 3; ++t) content.push_back(pick(rng, pool));
    }
    rng.shuffle(std::span<std::string>(content));
    char id[32];
    std::snprintf(id, sizeof id, "n%03d", i);
    lines.push_back(ar::to_sentiment_record({id, make_sentence(rng, content), polarity}));
  }
  return lines;
}

std::vector<std::string> noun_lexicon() {
  std::set<std::string> nouns(kSharedWords.begin(), kSharedWords.end());
  for (const auto& words : kClassWords)
    for (const auto& w : words)
      if (!kNotNouns.contains(w)) nouns.insert(w);
  std::vector<std::string> lines{"# Nouns of the bundled synthetic anomaly corpus, one per line."};
  lines.insert(lines.end(), nouns.begin(), nouns.end());
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <out-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  write_lines(dir / "anomaly_synthetic.jsonl", anomaly_corpus());
  write_lines(dir / "blobs_corpus.jsonl", blobs_corpus());
  write_lines(dir / "segmentation_fixture.jsonl", segmentation_corpus());
  write_lines(dir / "sentiment_fixture.jsonl", sentiment_corpus());
  write_lines(dir / "nouns.txt", noun_lexicon());
  return 0;
}
