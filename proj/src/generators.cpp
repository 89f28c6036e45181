#include "duelknap/generators.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "duelknap/errors.hpp"

namespace duelknap {

namespace {

std::vector<std::vector<double>> column_means(const std::vector<double>& per_arm) {
  std::vector<std::vector<double>> out;
  out.reserve(per_arm.size());
  for (double v : per_arm) out.push_back({v});
  return out;
}

}  // namespace

InstanceSpec synthetic_instance(char which) {
  const std::vector<std::vector<double>> raw = {
      {0.50, 0.55, 0.55, 0.54, 0.61, 0.61},
      {0.45, 0.50, 0.55, 0.55, 0.58, 0.60},
      {0.45, 0.45, 0.50, 0.54, 0.51, 0.56},
      {0.46, 0.45, 0.46, 0.50, 0.54, 0.50},
      {0.39, 0.42, 0.49, 0.46, 0.50, 0.51},
      {0.39, 0.40, 0.44, 0.50, 0.49, 0.50}};
  std::vector<double> cons;
  switch (which) {
    case 'a':
      cons = {0.9, 0.9, 0.1, 0.8, 0.8, 0.8};
      break;
    case 'b':
      cons = {0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
      break;
    case 'c':
      cons = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
      break;
    default:
      throw ConfigError("synthetic instance case must be a, b or c");
  }
  InstanceSpec inst{PreferenceMatrix::validate(raw)};
  inst.d = 1;
  inst.u_mean = column_means(cons);
  inst.v_mean = inst.u_mean;
  inst.noise_sigma = 0.05;
  inst.T = 2000;
  inst.B = 1000.0;
  inst.name = std::string("synthetic-") + which;
  inst.check();
  return inst;
}

InstanceSpec car_instance(const std::string& csv_path, char consumption_case) {
  std::ifstream in(csv_path);
  if (!in) throw BadCsv("cannot open " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw BadCsv("empty file");
  // Tolerate whitespace/CR in the header.
  std::string header;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) header += c;
  if (header != "i,j,wins_i,wins_j")
    throw BadCsv("expected header i,j,wins_i,wins_j");

  constexpr int kArms = 10;
  std::vector<std::vector<double>> p(kArms, std::vector<double>(kArms, 0.5));
  std::vector<std::vector<bool>> seen(kArms, std::vector<bool>(kArms, false));
  int rows = 0;
  int max_index = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string tok;
    long vals[4];
    for (int f = 0; f < 4; ++f) {
      if (!std::getline(ss, tok, ',')) throw BadCsv("short row: " + line);
      try {
        vals[f] = std::stol(tok);
      } catch (const std::exception&) {
        throw BadCsv("non-numeric field in row: " + line);
      }
    }
    const long i = vals[0], j = vals[1], wi = vals[2], wj = vals[3];
    if (i < 1 || j < 1 || i == j || wi < 0 || wj < 0)
      throw BadCsv("bad pair row: " + line);
    max_index = std::max<long>(max_index, std::max(i, j));
    if (i > kArms || j > kArms) throw KMismatch("arm index exceeds K=10");
    const int a = static_cast<int>(std::min(i, j)) - 1;
    const int b = static_cast<int>(std::max(i, j)) - 1;
    if (seen[a][b]) throw InconsistentPairCount("duplicate pair row: " + line);
    seen[a][b] = true;
    const long wa = i < j ? wi : wj;
    const long total = wi + wj;
    p[a][b] = total == 0 ? 0.5 : static_cast<double>(wa) / total;
    p[b][a] = 1.0 - p[a][b];
    ++rows;
  }
  if (rows != kArms * (kArms - 1) / 2)
    throw InconsistentPairCount("expected 45 pair rows, got " + std::to_string(rows));
  if (max_index != kArms) throw KMismatch("data does not cover K=10 arms");

  std::vector<double> cons;
  switch (consumption_case) {
    case 'a':
      cons = {0.9, 0.9, 0.01, 0.02, 0.7, 0.3, 0.6, 0.7, 0.7, 0.8};
      break;
    case 'b':
      cons = {0.7, 0.9, 0.9, 0.8, 0.6, 0.1, 0.4, 0.3, 0.5, 0.2};
      break;
    case 'c':
      cons = std::vector<double>(kArms, 0.0);
      break;
    default:
      throw ConfigError("car instance case must be a, b or c");
  }
  InstanceSpec inst{PreferenceMatrix::validate(p)};
  inst.d = 1;
  inst.u_mean = column_means(cons);
  inst.v_mean = inst.u_mean;
  inst.noise_sigma = 0.05;
  inst.T = 5000;
  inst.B = 4000.0;
  inst.name = std::string("car-") + consumption_case;
  inst.check();
  return inst;
}

InstanceSpec condorcet_lb_family(int K, double epsilon, CondorcetLbVariant variant,
                                 int which) {
  if (K < 2) throw OutOfRange("need K >= 2");
  if (which < 1 || which > K - 1) throw OutOfRange("which must be in 1..K-1");
  if (!((K - 1) * epsilon < 0.5)) throw EpsilonTooLarge("(K-1)*epsilon must be < 1/2");

  // Arm 1 faces the epsilon multiples 1..K-1, cyclically shifted by
  // which-1; a loser's rank equals its multiple.
  std::vector<int> rank(K, 0);
  for (int j = 0; j < K - 1; ++j) {
    const int m = ((j - (which - 1)) % (K - 1) + (K - 1)) % (K - 1) + 1;
    rank[j + 1] = m;
  }
  std::vector<std::vector<double>> p(K, std::vector<double>(K, 0.5));
  for (int j = 1; j < K; ++j) {
    p[0][j] = 0.5 + rank[j] * epsilon;
    p[j][0] = 1.0 - p[0][j];
  }
  if (variant != CondorcetLbVariant::general) {
    const double sign = variant == CondorcetLbVariant::total_order_prime ? -1.0 : 1.0;
    for (int i = 1; i < K; ++i) {
      for (int j = 1; j < K; ++j) {
        if (i == j) continue;
        p[i][j] = 0.5 + sign * (rank[j] - rank[i]) * epsilon;
      }
    }
  }

  InstanceSpec inst{PreferenceMatrix::validate(p)};
  inst.d = 1;
  inst.u_mean.assign(K, {0.0});
  inst.u_mean[0] = {1.0};
  inst.v_mean = inst.u_mean;
  inst.noise_sigma = 0.0;
  inst.T = 1000;
  inst.B = 250.0;
  inst.name = "condorcet-lb-" + std::to_string(which);
  inst.check();
  return inst;
}

InstanceSpec borda_lb_instance(double epsilon, BordaLbVariant variant) {
  if (!(2.0 * epsilon < 0.5)) throw EpsilonTooLarge("2*epsilon must be < 1/2");
  const std::vector<std::vector<double>> raw = {
      {0.5, 0.5, 0.5 + 2 * epsilon},
      {0.5, 0.5, 0.5 + epsilon},
      {0.5 - 2 * epsilon, 0.5 - epsilon, 0.5}};
  InstanceSpec inst{PreferenceMatrix::validate(raw)};
  inst.d = 1;
  const double mid = variant == BordaLbVariant::eps_probe_cost ? epsilon : 0.0;
  inst.u_mean = {{0.0}, {mid}, {1.0}};
  inst.v_mean = inst.u_mean;
  inst.noise_sigma = 0.0;
  inst.T = 1000;
  inst.B = 250.0;
  inst.name = "borda-lb";
  inst.check();
  return inst;
}

InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError(std::string("bad json: ") + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
    throw SchemaMismatch("unknown instance schema_version");
  try {
    const int k = j.at("K").get<int>();
    InstanceSpec inst{
        PreferenceMatrix::validate_flat(k, j.at("P").get<std::vector<double>>())};
    inst.d = j.at("d").get<int>();
    inst.u_mean = j.at("u_mean").get<std::vector<std::vector<double>>>();
    inst.v_mean = j.at("v_mean").get<std::vector<std::vector<double>>>();
    inst.noise_sigma = j.at("noise_sigma").get<double>();
    inst.T = j.at("T").get<long long>();
    inst.B = j.at("B").get<double>();
    inst.name = j.value("name", "");
    inst.check();
    return inst;
  } catch (const std::exception& e) {
    throw ValidationFailure(std::string("invalid instance file: ") + e.what());
  }
}

void save_instance(const InstanceSpec& inst, const std::string& path) {
  inst.check();
  nlohmann::json j;
  j["schema_version"] = 1;
  j["name"] = inst.name;
  j["K"] = inst.K();
  j["d"] = inst.d;
  j["P"] = inst.P.entries();
  j["u_mean"] = inst.u_mean;
  j["v_mean"] = inst.v_mean;
  j["noise_sigma"] = inst.noise_sigma;
  j["T"] = inst.T;
  j["B"] = inst.B;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace duelknap
