#include "tristeer/cli_records.hpp"

namespace tristeer::cli {

void to_json(Json& j, const FillReport& r) {
  j = Json{{"state", r.state}, {"amplitudes", r.amplitudes}, {"s1", r.s1}, {"s2", r.s2},
           {"s3", r.s3},       {"area", r.area},             {"fill", r.fill}};
  if (r.params) j["params"] = *r.params;
}

void from_json(const Json& j, FillReport& r) {
  j.at("state").get_to(r.state);
  j.at("amplitudes").get_to(r.amplitudes);
  j.at("s1").get_to(r.s1);
  j.at("s2").get_to(r.s2);
  j.at("s3").get_to(r.s3);
  j.at("area").get_to(r.area);
  j.at("fill").get_to(r.fill);
  if (j.contains("params")) {
    r.params = j.at("params").get<ParamsRecord>();
  } else {
    r.params.reset();
  }
}

}  // namespace tristeer::cli
