#include "finlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <vector>

namespace finlab {

namespace detail {

enum class Fn { Exp, Log, Sin, Cos, Sqrt, Abs };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct ExprNode {
    enum class Kind { Num, Var, Param, Neg, Bin, Call } kind;
    double num = 0.0;
    int group = 0;  // 0 -> x, 1 -> y
    int index = 0;  // 0-based variable index
    std::string name;
    BinOp op = BinOp::Add;
    Fn fn = Fn::Exp;
    std::shared_ptr<const ExprNode> a, b;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make_num(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Num;
    n->num = v;
    return n;
}

// ---- tokenizer ----

struct Token {
    enum class Type { Num, Ident, Op, LParen, RParen, End } type;
    double num = 0.0;
    std::string text;
    char op = 0;
    std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
                if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    ++k;
                    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                    j = k;
                }
            }
            t.type = Token::Type::Num;
            t.text = s.substr(i, j - i);
            try {
                t.num = std::stod(t.text);
            } catch (const std::exception&) {
                throw ParseError("invalid number '" + t.text + "'", i);
            }
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            t.type = Token::Type::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else if (c == '(') {
            t.type = Token::Type::LParen;
            ++i;
        } else if (c == ')') {
            t.type = Token::Type::RParen;
            ++i;
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            t.type = Token::Type::Op;
            t.op = c;
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back(t);
    }
    Token end;
    end.type = Token::Type::End;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

// ---- parser ----

struct Parser {
    const std::vector<Token>& toks;
    std::size_t at = 0;
    int dim;

    const Token& peek() const { return toks[at]; }
    const Token& next() { return toks[at++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().pos);
    }

    NodePtr parse_expr() {
        NodePtr n = parse_term();
        while (peek().type == Token::Type::Op && (peek().op == '+' || peek().op == '-')) {
            char op = next().op;
            NodePtr rhs = parse_term();
            auto b = std::make_shared<ExprNode>();
            b->kind = ExprNode::Kind::Bin;
            b->op = (op == '+') ? BinOp::Add : BinOp::Sub;
            b->a = n;
            b->b = rhs;
            n = b;
        }
        return n;
    }

    NodePtr parse_term() {
        NodePtr n = parse_unary();
        while (peek().type == Token::Type::Op && (peek().op == '*' || peek().op == '/')) {
            char op = next().op;
            NodePtr rhs = parse_unary();
            auto b = std::make_shared<ExprNode>();
            b->kind = ExprNode::Kind::Bin;
            b->op = (op == '*') ? BinOp::Mul : BinOp::Div;
            b->a = n;
            b->b = rhs;
            n = b;
        }
        return n;
    }

    NodePtr parse_unary() {
        if (peek().type == Token::Type::Op && peek().op == '-') {
            next();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Neg;
            n->a = parse_unary();
            return n;
        }
        if (peek().type == Token::Type::Op && peek().op == '+') {
            next();
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (peek().type == Token::Type::Op && peek().op == '^') {
            next();
            NodePtr e = parse_unary();  // right associative, allows 2^-3
            auto b = std::make_shared<ExprNode>();
            b->kind = ExprNode::Kind::Bin;
            b->op = BinOp::Pow;
            b->a = base;
            b->b = e;
            return b;
        }
        return base;
    }

    NodePtr parse_atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Num: {
                next();
                return make_num(t.num);
            }
            case Token::Type::LParen: {
                next();
                NodePtr n = parse_expr();
                if (peek().type != Token::Type::RParen) fail("expected ')'");
                next();
                return n;
            }
            case Token::Type::Ident: {
                next();
                static const std::map<std::string, Fn> fns = {
                    {"exp", Fn::Exp}, {"log", Fn::Log}, {"sin", Fn::Sin},
                    {"cos", Fn::Cos}, {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs}};
                auto fit = fns.find(t.text);
                if (fit != fns.end()) {
                    if (peek().type != Token::Type::LParen) fail("expected '(' after function name");
                    next();
                    NodePtr arg = parse_expr();
                    if (peek().type != Token::Type::RParen) fail("expected ')'");
                    next();
                    auto n = std::make_shared<ExprNode>();
                    n->kind = ExprNode::Kind::Call;
                    n->fn = fit->second;
                    n->a = arg;
                    return n;
                }
                // x<k> / y<k> are variables, anything else a named parameter
                if ((t.text[0] == 'x' || t.text[0] == 'y') && t.text.size() > 1 &&
                    std::all_of(t.text.begin() + 1, t.text.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                    int idx = std::stoi(t.text.substr(1));
                    if (idx < 1 || idx > dim)
                        throw ParseError("variable " + t.text + " out of range for dimension " +
                                             std::to_string(dim),
                                         t.pos);
                    auto n = std::make_shared<ExprNode>();
                    n->kind = ExprNode::Kind::Var;
                    n->group = (t.text[0] == 'x') ? 0 : 1;
                    n->index = idx - 1;
                    return n;
                }
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Param;
                n->name = t.text;
                return n;
            }
            default:
                fail("expected a value");
        }
    }
};

// ---- printer ----

int precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Bin:
            switch (n.op) {
                case BinOp::Add:
                case BinOp::Sub:
                    return 1;
                case BinOp::Mul:
                case BinOp::Div:
                    return 2;
                case BinOp::Pow:
                    return 4;
            }
            return 1;
        case ExprNode::Kind::Neg:
            return 3;
        default:
            return 5;
    }
}

void print_node(const ExprNode& n, int parent_prec, std::string& out) {
    int prec = precedence(n);
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (n.kind) {
        case ExprNode::Kind::Num:
            out += fmt17(n.num);
            break;
        case ExprNode::Kind::Var:
            out += (n.group == 0 ? "x" : "y") + std::to_string(n.index + 1);
            break;
        case ExprNode::Kind::Param:
            out += n.name;
            break;
        case ExprNode::Kind::Neg:
            out += "-";
            print_node(*n.a, prec, out);
            break;
        case ExprNode::Kind::Bin: {
            const char* ops[] = {" + ", " - ", "*", "/", "^"};
            const char* op = ops[static_cast<int>(n.op)];
            if (n.op == BinOp::Pow) {
                print_node(*n.a, prec + 1, out);
                out += op;
                print_node(*n.b, prec, out);
            } else {
                print_node(*n.a, prec, out);
                out += op;
                print_node(*n.b, prec + 1, out);
            }
            break;
        }
        case ExprNode::Kind::Call: {
            const char* names[] = {"exp", "log", "sin", "cos", "sqrt", "abs"};
            out += names[static_cast<int>(n.fn)];
            out += "(";
            print_node(*n.a, 0, out);
            out += ")";
            break;
        }
    }
    if (parens) out += ")";
}

// ---- evaluation ----

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static double constant(VecView, std::span<const double>, double v) { return v; }
    static double powi(double b, int p) { return std::pow(b, p); }
    static double div(double a, double b) {
        if (b == 0.0) throw DomainError("division by zero");
        return a / b;
    }
    static double f_exp(double v) { return std::exp(v); }
    static double f_log(double v) {
        if (v <= 0.0) throw DomainError("log of non-positive value " + fmt17(v));
        return std::log(v);
    }
    static double f_sin(double v) { return std::sin(v); }
    static double f_cos(double v) { return std::cos(v); }
    static double f_sqrt(double v) {
        if (v < 0.0) throw DomainError("sqrt of negative value " + fmt17(v));
        return std::sqrt(v);
    }
    static double f_abs(double v) { return std::fabs(v); }
};

template <>
struct ScalarOps<TaylorScalar> {
    static TaylorScalar constant(std::span<const TaylorScalar> x, std::span<const TaylorScalar> y,
                                 double v) {
        if (x.empty() && y.empty()) throw PreconditionError("no variable bindings given");
        const TaylorScalar& proto = x.empty() ? y[0] : x[0];
        return TaylorScalar::constant(proto.space(), v);
    }
    static TaylorScalar powi(const TaylorScalar& b, int p) { return pow(b, p); }
    static TaylorScalar div(const TaylorScalar& a, const TaylorScalar& b) {
        if (b.value() == 0.0) throw DomainError("division by zero");
        return a / b;
    }
    static TaylorScalar f_exp(const TaylorScalar& v) { return exp(v); }
    static TaylorScalar f_log(const TaylorScalar& v) { return log(v); }
    static TaylorScalar f_sin(const TaylorScalar& v) { return sin(v); }
    static TaylorScalar f_cos(const TaylorScalar& v) { return cos(v); }
    static TaylorScalar f_sqrt(const TaylorScalar& v) { return sqrt(v); }
    static TaylorScalar f_abs(const TaylorScalar& v) { return abs(v); }
};

bool integer_exponent(const ExprNode& n, int& out) {
    const ExprNode* p = &n;
    int sign = 1;
    while (p->kind == ExprNode::Kind::Neg) {
        sign = -sign;
        p = p->a.get();
    }
    if (p->kind != ExprNode::Kind::Num) return false;
    double ip;
    if (std::modf(p->num, &ip) != 0.0 || std::fabs(ip) > 64) return false;
    out = sign * static_cast<int>(ip);
    return true;
}

template <class S>
S eval_node(const ExprNode& n, std::span<const S> x, std::span<const S> y, const ParamMap& params) {
    switch (n.kind) {
        case ExprNode::Kind::Num:
            return ScalarOps<S>::constant(x, y, n.num);
        case ExprNode::Kind::Var: {
            const auto& g = (n.group == 0) ? x : y;
            if (n.index >= static_cast<int>(g.size()))
                throw PreconditionError("variable binding missing for index " + std::to_string(n.index + 1));
            return g[n.index];
        }
        case ExprNode::Kind::Param: {
            auto it = params.find(n.name);
            if (it == params.end()) throw DomainError("unbound parameter '" + n.name + "'");
            return ScalarOps<S>::constant(x, y, it->second);
        }
        case ExprNode::Kind::Neg:
            return -eval_node(*n.a, x, y, params);
        case ExprNode::Kind::Bin: {
            try {
                if (n.op == BinOp::Pow) {
                    int p;
                    S base = eval_node(*n.a, x, y, params);
                    if (integer_exponent(*n.b, p)) return ScalarOps<S>::powi(base, p);
                    S e = eval_node(*n.b, x, y, params);
                    return ScalarOps<S>::f_exp(e * ScalarOps<S>::f_log(base));
                }
                S a = eval_node(*n.a, x, y, params);
                S b = eval_node(*n.b, x, y, params);
                switch (n.op) {
                    case BinOp::Add:
                        return a + b;
                    case BinOp::Sub:
                        return a - b;
                    case BinOp::Mul:
                        return a * b;
                    case BinOp::Div:
                    default:
                        return ScalarOps<S>::div(a, b);
                }
            } catch (const DomainError& e) {
                if (std::string(e.what()).find(" in '") != std::string::npos) throw;
                std::string sub;
                print_node(n, 0, sub);
                throw DomainError(std::string(e.what()) + " in '" + sub + "'");
            }
        }
        case ExprNode::Kind::Call: {
            S a = eval_node(*n.a, x, y, params);
            try {
                switch (n.fn) {
                    case Fn::Exp:
                        return ScalarOps<S>::f_exp(a);
                    case Fn::Log:
                        return ScalarOps<S>::f_log(a);
                    case Fn::Sin:
                        return ScalarOps<S>::f_sin(a);
                    case Fn::Cos:
                        return ScalarOps<S>::f_cos(a);
                    case Fn::Sqrt:
                        return ScalarOps<S>::f_sqrt(a);
                    case Fn::Abs:
                        return ScalarOps<S>::f_abs(a);
                }
            } catch (const DomainError& e) {
                if (std::string(e.what()).find(" in '") != std::string::npos) throw;
                std::string sub;
                print_node(n, 0, sub);
                throw DomainError(std::string(e.what()) + " in '" + sub + "'");
            }
            throw PreconditionError("unreachable");
        }
    }
    throw PreconditionError("unreachable");
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Num:
            return a.num == b.num;
        case ExprNode::Kind::Var:
            return a.group == b.group && a.index == b.index;
        case ExprNode::Kind::Param:
            return a.name == b.name;
        case ExprNode::Kind::Neg:
            return structurally_equal(*a.a, *b.a);
        case ExprNode::Kind::Bin:
            return a.op == b.op && structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
        case ExprNode::Kind::Call:
            return a.fn == b.fn && structurally_equal(*a.a, *b.a);
    }
    return false;
}

void collect_params(const ExprNode& n, std::set<std::string>& out) {
    if (n.kind == ExprNode::Kind::Param) out.insert(n.name);
    if (n.a) collect_params(*n.a, out);
    if (n.b) collect_params(*n.b, out);
}

}  // namespace
}  // namespace detail

Expression Expression::parse(const std::string& text, int dim) {
    if (text.empty()) throw ParseError("empty expression", 0);
    auto toks = detail::tokenize(text);
    detail::Parser p{toks, 0, dim};
    auto root = p.parse_expr();
    if (p.peek().type != detail::Token::Type::End) p.fail("unexpected trailing input");
    Expression e;
    e.root_ = root;
    e.dim_ = dim;
    return e;
}

Expression Expression::constant(double v, int dim) {
    Expression e;
    e.root_ = detail::make_num(v);
    e.dim_ = dim;
    return e;
}

double Expression::eval(VecView x, VecView y, const ParamMap& params) const {
    double v = detail::eval_node<double>(*root_, x, y, params);
    if (std::isnan(v)) throw DomainError("expression evaluated to NaN at " + point_str(x, y));
    return v;
}

TaylorScalar Expression::eval(std::span<const TaylorScalar> x, std::span<const TaylorScalar> y,
                              const ParamMap& params) const {
    return detail::eval_node<TaylorScalar>(*root_, x, y, params);
}

std::string Expression::str() const {
    std::string out;
    detail::print_node(*root_, 0, out);
    return out;
}

bool Expression::operator==(const Expression& o) const {
    if (!root_ || !o.root_) return root_ == o.root_;
    return dim_ == o.dim_ && detail::structurally_equal(*root_, *o.root_);
}

std::vector<std::string> Expression::param_names() const {
    std::set<std::string> s;
    if (root_) detail::collect_params(*root_, s);
    return {s.begin(), s.end()};
}

}  // namespace finlab
