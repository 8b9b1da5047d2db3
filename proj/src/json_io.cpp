#include "billiards/json_io.hpp"

#include <sstream>

namespace billiards {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Json rat_json(const BigRat& q) {
  Json j;
  j["num"] = numerator(q).str();
  j["den"] = denominator(q).str();
  return j;
}

BigRat rat_from_json(const Json& j) {
  if (j.is_string()) return BigRat(j.get<std::string>());
  if (j.is_number_integer()) return BigRat(j.get<long>());
  return BigRat(BigInt(j.at("num").get<std::string>()),
                BigInt(j.at("den").get<std::string>()));
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_rational()) return rat_json(s.rat());
  if (s.is_quad()) {
    const Quad& q = s.quad_value();
    Json j;
    j["a"] = rat_json(q.a);
    j["b"] = rat_json(q.b);
    j["d"] = q.d;
    return j;
  }
  const Approx& a = s.approx_value();
  Json j;
  j["re"] = a.re.str(40);
  j["im"] = a.im.str(40);
  return j;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return Scalar(rat_from_json(j));
  if (j.contains("d"))
    return Scalar::quad(rat_from_json(j.at("a")), rat_from_json(j.at("b")),
                        j.at("d").get<std::int64_t>());
  if (j.contains("re"))
    return Scalar::approx(BigFloat(j.at("re").get<std::string>()),
                          BigFloat(j.at("im").get<std::string>()));
  return Scalar(rat_from_json(j));
}

std::string scalar_key(const Scalar& s) { return s.str(); }

Scalar scalar_from_string(const std::string& text) {
  return Scalar(BigRat(text));
}

Json to_json(const HomPoint& p) {
  return Json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
}

HomPoint point_from_json(const Json& j) {
  return HomPoint(scalar_from_json(j.at(0)), scalar_from_json(j.at(1)),
                  scalar_from_json(j.at(2)));
}

Json to_json(const MobiusMap& m) {
  Json j;
  j["matrix"] = Json::array(
      {Json::array({to_json(m.a()), to_json(m.b())}),
       Json::array({to_json(m.c()), to_json(m.d())})});
  j["chart"] = m.chart().name();
  if (m.chart().tag == Chart::Tag::Zeta || m.chart().tag == Chart::Tag::U)
    j["z0"] = to_json(m.chart().z0);
  return j;
}

Json to_json(const Conic& c) {
  Json arr = Json::array();
  for (const Scalar& s : c.upper()) arr.push_back(to_json(s));
  return arr;
}

Conic conic_from_json(const Json& j) {
  std::array<Scalar, 6> u;
  for (int i = 0; i < 6; ++i) u[i] = scalar_from_json(j.at(i));
  return Conic::from_upper(u);
}

Json to_json(const Pencil& p) {
  Json j;
  j["A"] = to_json(p.A);
  j["B"] = to_json(p.B);
  return j;
}

Pencil pencil_from_json(const Json& j) {
  return Pencil{conic_from_json(j.at("A")), conic_from_json(j.at("B"))};
}

Json to_json(const BilliardSpec& s) {
  Json j;
  if (s.is_named()) {
    j["kind"] = kind_name(std::get<NamedKind>(s.v));
    return j;
  }
  if (s.is_exotic_a()) {
    const auto& a = std::get<ExoticASpec>(s.v);
    j["kind"] = "a";
    if (a.parity() == ExoticASpec::Parity::Odd) {
      j["parity"] = "odd";
      j["N"] = *a.N();
    } else if (a.parity() == ExoticASpec::Parity::Even) {
      j["parity"] = "even";
      j["N"] = *a.N();
    } else {
      j["rho"] = a.rho.str();
    }
    return j;
  }
  if (s.is_pencil()) {
    j["kind"] = "pencil";
    j["pencil"] = to_json(std::get<PencilSpec>(s.v).pencil);
    return j;
  }
  const auto& c = std::get<CustomSpec>(s.v);
  j["kind"] = "custom";
  Json poles = Json::array();
  for (const auto& [loc, res] : c.poles) {
    Json p;
    p["z"] = to_json(loc);
    p["residue"] = to_json(res);
    poles.push_back(p);
  }
  j["custom_f"] = Json{{"poles", poles}, {"infinity", to_json(c.infinity_residue)}};
  j["integrability_verified"] = c.integrability_verified;
  return j;
}

namespace {

NamedKind named_from_string(const std::string& s) {
  if (s == "b1") return NamedKind::B1;
  if (s == "b2") return NamedKind::B2;
  if (s == "c1") return NamedKind::C1;
  if (s == "c2") return NamedKind::C2;
  if (s == "d") return NamedKind::D;
  fail("ParseError", "unknown spec kind '" + s + "'");
}

}  // namespace

BilliardSpec spec_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "a") {
    if (j.contains("rho"))
      return BilliardSpec::exotic_a(ExoticASpec{rat_from_json(j.at("rho"))});
    std::string parity = j.value("parity", "odd");
    int n = j.at("N").get<int>();
    return BilliardSpec::exotic_a(parity == "odd" ? ExoticASpec::odd(n)
                                                  : ExoticASpec::even(n));
  }
  if (kind == "pencil") return BilliardSpec::pencil(pencil_from_json(j.at("pencil")));
  if (kind == "custom") {
    CustomSpec c;
    for (const auto& p : j.at("custom_f").at("poles"))
      c.poles.emplace_back(scalar_from_json(p.at("z")),
                           scalar_from_json(p.at("residue")));
    c.infinity_residue = scalar_from_json(j.at("custom_f").at("infinity"));
    return BilliardSpec::custom(std::move(c));
  }
  return BilliardSpec::named(named_from_string(kind));
}

Json to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["e"] = Json::array({e[0], e[1], e[2]});
    t["coef"] = to_json(c);
    arr.push_back(t);
  }
  return arr;
}

Poly poly_from_json(const Json& j) {
  Poly p;
  for (const auto& t : j) {
    Exp3 e{t.at("e").at(0).get<int>(), t.at("e").at(1).get<int>(),
           t.at("e").at(2).get<int>()};
    p.set_coeff(e, scalar_from_json(t.at("coef")));
  }
  return p;
}

Json to_json(const HomRational& r) {
  Json j;
  j["num"] = to_json(r.num());
  j["den"] = to_json(r.den());
  return j;
}

Json to_json(const ResidueReport& r) {
  Json j;
  j["schema"] = "1";
  Json poles = Json::object();
  for (const auto& [loc, res] : r.finite_poles) poles[scalar_key(loc)] = scalar_key(res);
  j["poles"] = poles;
  j["infinity"] = scalar_key(r.infinity_residue);
  j["total"] = scalar_key(r.total);
  return j;
}

Json to_json(const VerifyReport& r, const BilliardSpec& spec) {
  Json j;
  j["schema"] = "1";
  j["spec"] = to_json(spec);
  j["checked"] = r.checked;
  j["skipped"] = r.skipped;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json x;
    x["z0"] = scalar_key(f.z0);
    x["u"] = scalar_key(f.u);
    x["detail"] = f.detail;
    fails.push_back(x);
  }
  j["counterexamples"] = fails;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const EquivalenceReport& r, const std::string& which) {
  Json j;
  j["schema"] = "1";
  j["case"] = which;
  if (which == "c") {
    j["q1_identity"] = r.q1_identity;
    j["q2_identity"] = r.q2_identity;
  }
  j["integral_match"] = r.integral_match;
  j["constant"] = scalar_key(r.constant);
  j["points_checked"] = r.points_checked;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const OdeReport& r) {
  Json j;
  j["schema"] = "1";
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json x;
    x["z0"] = scalar_key(s.z0);
    x["lhs"] = s.lhs.str(25);
    x["rhs"] = s.rhs.str(25);
    x["rel_error"] = s.rel_error.str(8);
    samples.push_back(x);
  }
  j["samples"] = samples;
  j["max_rel_error"] = r.max_rel_error.str(8);
  j["pass"] = r.pass;
  return j;
}

Json to_json(const HessianOnCurve& h) {
  Json j;
  j["schema"] = "1";
  j["d"] = h.d.str();
  j["c"] = scalar_key(h.c);
  j["exact"] = h.exact;
  j["c_weighted"] = scalar_key(h.c_weighted);
  j["c_literal"] = scalar_key(h.c_literal);
  j["matches_weighted"] = h.matches_weighted;
  j["matches_literal"] = h.matches_literal;
  j["residue"] = residue_from_hessian(h).str();
  return j;
}

Json to_json(const RhoClass& c, const BigRat& rho) {
  Json j;
  j["schema"] = "1";
  j["rho"] = rho.str();
  j["in_M"] = c.in_M;
  if (c.m) j["m"] = *c.m;
  return j;
}

Json to_json(const Primitive& p) {
  Json j;
  j["schema"] = "1";
  Json cs = Json::array();
  for (const BigRat& c : p.cj) cs.push_back(c.str());
  j["c"] = cs;
  Json orbit = Json::array();
  for (const ChartValue& v : p.orbit) orbit.push_back(v.str());
  j["orbit"] = orbit;
  j["w_factor"] = p.has_w_factor;
  j["z_factor"] = p.has_z_factor;
  j["poly"] = to_json(p.poly.poly);
  return j;
}

Json to_json(const Trajectory& t) {
  Json j;
  j["schema"] = "1";
  Json bs = Json::array();
  for (const auto& b : t.bounces) {
    Json x;
    x["step"] = b.step;
    x["x1"] = scalar_key(b.hit.x);
    x["x2"] = scalar_key(b.hit.y);
    x["v1_in"] = scalar_key(b.v_in.x);
    x["v2_in"] = scalar_key(b.v_in.y);
    x["v1_out"] = scalar_key(b.v_out.x);
    x["v2_out"] = scalar_key(b.v_out.y);
    auto pin = b.psi_in.normalized();
    auto pout = b.psi_out.normalized();
    x["psi_in_num"] = scalar_key(pin.num);
    x["psi_in_den"] = scalar_key(pin.den);
    x["psi_out_num"] = scalar_key(pout.num);
    x["psi_out_den"] = scalar_key(pout.den);
    x["exact"] = b.exact;
    bs.push_back(x);
  }
  j["bounces"] = bs;
  j["demoted_to_approx"] = t.demoted_to_approx;
  return j;
}

Json to_json(const TransversalField& f) {
  Json j;
  if (std::holds_alternative<FieldA>(f.v)) {
    j["kind"] = "a";
    j["rho"] = std::get<FieldA>(f.v).rho.str();
    return j;
  }
  if (std::holds_alternative<NamedKind>(f.v)) {
    j["kind"] = kind_name(std::get<NamedKind>(f.v));
    return j;
  }
  if (std::holds_alternative<FieldSpaceForm>(f.v)) {
    const auto& sf = std::get<FieldSpaceForm>(f.v);
    j["kind"] = "spaceform";
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) {
      Json row = Json::array();
      for (int k = 0; k < 3; ++k) row.push_back(to_json(sf.A.m[i][k]));
      rows.push_back(row);
    }
    j["A"] = rows;
    j["table"] = to_json(sf.table);
    return j;
  }
  j["kind"] = "pencil";
  j["pencil"] = to_json(std::get<FieldPencilDual>(f.v).pencil);
  return j;
}

TransversalField field_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "a") {
    if (j.contains("rho")) return TransversalField::a(rat_from_json(j.at("rho")));
    std::string parity = j.value("parity", "odd");
    int n = j.at("N").get<int>();
    return TransversalField::a(parity == "odd" ? ExoticASpec::odd(n).rho
                                               : ExoticASpec::even(n).rho);
  }
  if (kind == "spaceform") {
    Matrix3 A;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) A.m[i][k] = scalar_from_json(j.at("A").at(i).at(k));
    return TransversalField::space_form(A, conic_from_json(j.at("table")));
  }
  if (kind == "pencil")
    return TransversalField::pencil_dual(pencil_from_json(j.at("pencil")));
  return TransversalField::named(named_from_string(kind));
}

}  // namespace billiards
