#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubesos/cube_fourier.hpp"
#include "cubesos/kernel.hpp"
#include "cubesos/outer.hpp"
#include "cubesos/qary.hpp"

namespace cubesos {

using Json = nlohmann::json;

// Round-trip exact decimal form (17 significant digits).
std::string format_double(double v);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"n", "terms": [{"vars": [1-based], "coef"}]}
Json to_json(const CubePolynomial& p);
// {"n", "fourier": [{"a": bitstring, "coef"}]}
Json to_json(const FourierPolynomial& p);
// Accepts either form.
CubePolynomial cube_poly_from_json(const Json& j);

// {"n", "k", "entries": [{"i", "j", "poly": {...}}]}; (i,j) also fills (j,i).
Json to_json(const MatrixPolynomial& F);
MatrixPolynomial matrix_poly_from_json(const Json& j);

// {"n", "q", "terms": [{"exps": [...], "coef"}]}
Json to_json(const QaryPolynomial& p);
QaryPolynomial qary_poly_from_json(const Json& j);

struct GraphInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based
  std::vector<double> weights;             // empty = unit weights
};
// {"n", "edges": [[i, j], ...], "weights": [...]?}; vertices are 0-based.
GraphInstance graph_from_json(const Json& j);
Eigen::MatrixXd weight_matrix(const GraphInstance& g);

Json to_json(const SosCubeCertificate& c);
SosCubeCertificate certificate_from_json(const Json& j);

Json to_json(const OuterBoundResult& r);

// Minimal CSV writer; doubles use format_double, NaN prints as "nan".
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void header(const std::vector<std::string>& cols);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ostream& os_;
  bool first_ = true;
};

}  // namespace cubesos
