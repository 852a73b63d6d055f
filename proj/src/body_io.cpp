#include "cclab/body_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "cclab/codim.hpp"
#include "cclab/common.hpp"

namespace cclab {
namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw PreconditionError(std::string("parse_body: expected '") + c + "' in \"" + s +
                              "\"");
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i)
      throw PreconditionError("parse_body: expected a name in \"" + s + "\"");
    return s.substr(start, i - start);
  }
  double number() {
    skip();
    const char* begin = s.c_str() + i;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
      throw PreconditionError("parse_body: expected a number in \"" + s + "\"");
    i += static_cast<size_t>(end - begin);
    return v;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
};

ConvexBody parse_expr(Cursor& c, int N) {
  std::string name = c.ident();
  if (name == "cube") return ConvexBody::box(Vec::Constant(N, -1.0), Vec::Constant(N, 1.0));
  if (name == "nearball") return near_ball_ellipsoid(N);
  c.expect('(');
  if (name == "ball") {
    AmbientNorm p = parse_norm(c.ident());
    c.expect(',');
    double r = c.number();
    c.expect(')');
    return ConvexBody::ball(p, Vec::Zero(N), r);
  }
  if (name == "box") {
    double e = c.number();
    c.expect(')');
    return ConvexBody::box(Vec::Constant(N, -e), Vec::Constant(N, e));
  }
  if (name == "ellipsoid") {
    std::vector<double> axes{c.number()};
    while (c.eat(',')) axes.push_back(c.number());
    c.expect(')');
    Vec q(N);
    for (int i = 0; i < N; ++i) {
      double a = axes[std::min<size_t>(i, axes.size() - 1)];
      if (!(a > 0.0)) throw PreconditionError("parse_body: ellipsoid axes must be positive");
      q(i) = 1.0 / (a * a);
    }
    return ConvexBody::quad_lin(q, Vec::Zero(N), 1.0);
  }
  if (name == "scale") {
    ConvexBody inner = parse_expr(c, N);
    c.expect(',');
    double s = c.number();
    c.expect(')');
    return ConvexBody::scale(inner, s);
  }
  if (name == "shift") {
    ConvexBody inner = parse_expr(c, N);
    c.expect(',');
    double t = c.number();
    c.expect(')');
    Vec v = Vec::Zero(N);
    v(0) = t;
    return ConvexBody::translate(inner, v);
  }
  if (name == "cap") {
    ConvexBody a = parse_expr(c, N);
    c.expect(',');
    ConvexBody b = parse_expr(c, N);
    c.expect(')');
    return ConvexBody::intersection({a, b});
  }
  throw PreconditionError("parse_body: unknown body \"" + name + "\"");
}

}  // namespace

ConvexBody parse_body(const std::string& expr, int N) {
  if (N < 1) throw PreconditionError("parse_body: dimension must be positive");
  Cursor c{expr};
  ConvexBody b = parse_expr(c, N);
  if (!c.done())
    throw PreconditionError("parse_body: trailing input in \"" + expr + "\"");
  return b;
}

AmbientNorm parse_norm(const std::string& name) {
  if (name == "l1") return AmbientNorm::L1;
  if (name == "l2") return AmbientNorm::L2;
  if (name == "linf") return AmbientNorm::Linf;
  throw PreconditionError("parse_norm: unknown norm \"" + name + "\" (l1, l2, linf)");
}

}  // namespace cclab
