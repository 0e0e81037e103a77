#include "cqbus/schedule.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "cqbus/errors.hpp"

namespace cqbus::schedule {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind { identifier, number, string, symbol, end };

struct Token {
    TokenKind kind;
    std::string text;   // identifier name, number lexeme, unescaped string, or the symbol
    double number = 0.0;
    SourcePos pos;
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            const SourcePos pos = here();
            if (at_end()) {
                out.push_back({TokenKind::end, "end of input", 0.0, pos});
                return out;
            }
            const char c = peek();
            if (is_ident_start(c)) {
                std::string name;
                while (!at_end() && is_ident_char(peek())) name += advance();
                out.push_back({TokenKind::identifier, name, 0.0, pos});
            } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
                out.push_back(number(pos));
            } else if (c == '"') {
                out.push_back(string(pos));
            } else if (std::string_view("{};=+-*/()").find(c) != std::string_view::npos) {
                out.push_back({TokenKind::symbol, std::string(1, advance()), 0.0, pos});
            } else {
                throw ScheduleError(pos.line, pos.column, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    bool at_end() const { return offset_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return offset_ + ahead < src_.size() ? src_[offset_ + ahead] : '\0';
    }
    SourcePos here() const { return {line_, column_}; }

    char advance() {
        const char c = src_[offset_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_blank() {
        while (!at_end()) {
            const char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }

    Token number(SourcePos pos) {
        std::string lexeme;
        while (is_digit(peek())) lexeme += advance();
        if (peek() == '.') {
            lexeme += advance();
            while (is_digit(peek())) lexeme += advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            lexeme += advance();
            if (peek() == '+' || peek() == '-') lexeme += advance();
            if (!is_digit(peek())) throw ScheduleError(pos.line, pos.column, "malformed number '" + lexeme + "'");
            while (is_digit(peek())) lexeme += advance();
        }
        if (is_ident_start(peek())) {
            throw ScheduleError(pos.line, pos.column, "malformed number '" + lexeme + peek() + "'");
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc{} || ptr != lexeme.data() + lexeme.size() || !std::isfinite(value)) {
            throw ScheduleError(pos.line, pos.column, "number out of range '" + lexeme + "'");
        }
        return {TokenKind::number, lexeme, value, pos};
    }

    Token string(SourcePos pos) {
        advance();  // opening quote
        std::string value;
        for (;;) {
            if (at_end() || peek() == '\n') throw ScheduleError(pos.line, pos.column, "unterminated string");
            const char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                const char next = peek();
                if (next != '"' && next != '\\') {
                    throw ScheduleError(pos.line, pos.column, "unsupported escape in string");
                }
                value += advance();
            } else {
                value += c;
            }
        }
        return {TokenKind::string, value, 0.0, pos};
    }

    const std::string& src_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string>& functions() {
    static const std::set<std::string> f{"sqrt", "cos", "sin", "acos", "asin"};
    return f;
}

const std::set<std::string>& reserved() {
    static const std::set<std::string> r{"schedule", "const", "resonate", "idle", "for", "with",
                                         "pi",       "lambda", "sqrt",   "cos",  "sin", "acos", "asin"};
    return r;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case TokenKind::identifier: return "'" + t.text + "'";
    case TokenKind::number: return "number " + t.text;
    case TokenKind::string: return "string";
    case TokenKind::symbol: return "'" + t.text + "'";
    case TokenKind::end: return "end of input";
    }
    return "token";
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ScheduleAst parse_schedule() {
        ScheduleAst ast;
        ast.pos = peek().pos;
        expect_keyword("schedule");
        if (peek().kind != TokenKind::string) fail(peek(), "expected schedule name string");
        ast.name = next().text;
        expect_symbol("{");
        while (!is_symbol("}")) {
            const Token& t = peek();
            if (t.kind == TokenKind::identifier && t.text == "const") {
                ast.statements.emplace_back(const_decl());
            } else if (t.kind == TokenKind::identifier && t.text == "resonate") {
                ast.statements.emplace_back(resonate());
            } else if (t.kind == TokenKind::identifier && t.text == "idle") {
                ast.statements.emplace_back(idle());
            } else {
                fail(t, "expected 'const', 'resonate', 'idle' or '}', found " + describe(t));
            }
        }
        ast.close_pos = next().pos;
        if (peek().kind != TokenKind::end) fail(peek(), "unexpected " + describe(peek()) + " after schedule");
        return ast;
    }

private:
    const Token& peek() const { return tokens_[cursor_]; }
    const Token& next() { return tokens_[cursor_ < tokens_.size() - 1 ? cursor_++ : cursor_]; }
    bool is_symbol(const char* s) const { return peek().kind == TokenKind::symbol && peek().text == s; }

    [[noreturn]] static void fail(const Token& t, const std::string& message) {
        throw ScheduleError(t.pos.line, t.pos.column, message);
    }

    void expect_symbol(const char* s) {
        if (!is_symbol(s)) fail(peek(), std::string("expected '") + s + "', found " + describe(peek()));
        next();
    }

    void expect_keyword(const char* k) {
        if (peek().kind != TokenKind::identifier || peek().text != k) {
            fail(peek(), std::string("expected '") + k + "', found " + describe(peek()));
        }
        next();
    }

    ConstDecl const_decl() {
        const SourcePos pos = next().pos;
        const Token& name = peek();
        if (name.kind != TokenKind::identifier) fail(name, "expected constant name, found " + describe(name));
        if (reserved().contains(name.text)) fail(name, "'" + name.text + "' is reserved");
        if (consts_.contains(name.text)) fail(name, "duplicate const '" + name.text + "'");
        const std::string id = next().text;
        expect_symbol("=");
        ExprPtr value = expression();
        expect_symbol(";");
        consts_.insert(id);  // a const is visible only after its own declaration
        return {id, value, pos};
    }

    ResonateStmt resonate() {
        ResonateStmt stmt;
        stmt.pos = next().pos;
        while (!(peek().kind == TokenKind::identifier && peek().text == "for")) {
            stmt.qubits.push_back(qubit());
        }
        if (stmt.qubits.empty()) fail(peek(), "expected at least one qubit before 'for'");
        next();  // for
        stmt.duration = expression();
        if (peek().kind == TokenKind::identifier && peek().text == "with") {
            fail(peek(), "per-segment 'with lambda = ...' overrides are not supported");
        }
        expect_symbol(";");
        return stmt;
    }

    QubitRef qubit() {
        const Token& t = peek();
        if (t.kind != TokenKind::identifier || t.text.empty() || t.text[0] != 'q') {
            fail(t, "expected qubit (q<index>) or 'for', found " + describe(t));
        }
        if (t.text == "q") {
            next();
            const Token& num = peek();
            if (num.kind != TokenKind::number) fail(num, "expected qubit index after 'q'");
            const std::size_t index = integer(num);
            next();
            return {index, t.pos};
        }
        const std::string digits = t.text.substr(1);
        for (char c : digits) {
            if (!is_digit(c)) fail(t, "expected qubit (q<index>), found " + describe(t));
        }
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail(t, "qubit index out of range");
        next();
        return {index, t.pos};
    }

    static std::size_t integer(const Token& t) {
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), index);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail(t, "qubit index must be an integer");
        return index;
    }

    IdleStmt idle() {
        IdleStmt stmt;
        stmt.pos = next().pos;
        expect_keyword("for");
        stmt.duration = expression();
        expect_symbol(";");
        return stmt;
    }

    static ExprPtr make(decltype(ExprNode::node) n, SourcePos pos) {
        return std::make_shared<const ExprNode>(ExprNode{std::move(n), pos});
    }

    ExprPtr expression() {
        ExprPtr lhs = term();
        while (is_symbol("+") || is_symbol("-")) {
            const Token& op = next();
            lhs = make(BinaryExpr{op.text[0], lhs, term()}, op.pos);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (is_symbol("*") || is_symbol("/")) {
            const Token& op = next();
            lhs = make(BinaryExpr{op.text[0], lhs, unary()}, op.pos);
        }
        return lhs;
    }

    ExprPtr unary() {
        if (is_symbol("-")) {
            const SourcePos pos = next().pos;
            return make(UnaryExpr{unary()}, pos);
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == TokenKind::number) {
            next();
            return make(NumberExpr{t.number}, t.pos);
        }
        if (is_symbol("(")) {
            next();
            ExprPtr inner = expression();
            expect_symbol(")");
            return inner;
        }
        if (t.kind == TokenKind::identifier) {
            next();
            if (functions().contains(t.text)) {
                expect_symbol("(");
                ExprPtr arg = expression();
                expect_symbol(")");
                return make(CallExpr{t.text, arg}, t.pos);
            }
            if (t.text == "pi" || t.text == "lambda" || consts_.contains(t.text)) {
                return make(IdentExpr{t.text}, t.pos);
            }
            fail(t, "unknown identifier '" + t.text + "'");
        }
        fail(t, "expected expression, found " + describe(t));
    }

    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    std::set<std::string> consts_;
};

// ---------------------------------------------------------------------------
// Evaluation

class Evaluator {
public:
    explicit Evaluator(double lambda) { env_["pi"] = std::numbers::pi; env_["lambda"] = lambda; }

    void bind(const std::string& name, double value) { env_[name] = value; }

    double eval(const ExprNode& e) const {
        return std::visit([&](const auto& n) { return eval_node(n, e.pos); }, e.node);
    }

private:
    [[noreturn]] static void fail(SourcePos pos, const std::string& message) {
        throw ScheduleError(pos.line, pos.column, message);
    }

    double eval_node(const NumberExpr& n, SourcePos) const { return n.value; }

    double eval_node(const IdentExpr& n, SourcePos pos) const {
        const auto it = env_.find(n.name);
        if (it == env_.end()) fail(pos, "unknown identifier '" + n.name + "'");
        return it->second;
    }

    double eval_node(const UnaryExpr& n, SourcePos) const { return -eval(*n.operand); }

    double eval_node(const BinaryExpr& n, SourcePos pos) const {
        const double a = eval(*n.lhs);
        const double b = eval(*n.rhs);
        switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
            if (b == 0.0) fail(pos, "division by zero");
            return a / b;
        }
        fail(pos, "unknown operator");
    }

    double eval_node(const CallExpr& n, SourcePos pos) const {
        const double x = eval(*n.argument);
        if (n.function == "sqrt") {
            if (x < 0.0) fail(pos, "sqrt of a negative number");
            return std::sqrt(x);
        }
        if (n.function == "cos") return std::cos(x);
        if (n.function == "sin") return std::sin(x);
        if (n.function == "acos" || n.function == "asin") {
            if (x < -1.0 || x > 1.0) fail(pos, n.function + " argument outside [-1, 1]");
            return n.function == "acos" ? std::acos(x) : std::asin(x);
        }
        fail(pos, "unknown function '" + n.function + "'");
    }

    std::map<std::string, double> env_;
};

// Leftmost position of an expression, for reporting errors about the whole expression.
SourcePos leftmost(const ExprPtr& e) {
    if (const auto* b = std::get_if<BinaryExpr>(&e->node)) return leftmost(b->lhs);
    return e->pos;
}

double checked_duration(const Evaluator& ev, const ExprPtr& expr) {
    const double t = ev.eval(*expr);
    const SourcePos p = leftmost(expr);
    if (!std::isfinite(t)) throw ScheduleError(p.line, p.column, "duration is not finite");
    if (!(t > 0.0)) throw ScheduleError(p.line, p.column, "non-positive duration " + format_number(t));
    return t;
}

} // namespace

ScheduleAst parse(const std::string& source) {
    Lexer lexer(source);
    Parser parser(lexer.tokenize());
    return parser.parse_schedule();
}

PulseSchedule compile(const ScheduleAst& ast, double lambda, std::size_t n_qubits) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ContractViolation("compile: lambda binding must be positive and finite");
    }
    PulseSchedule out{ast.name, lambda, {}};
    Evaluator ev(lambda);
    for (const Statement& st : ast.statements) {
        if (const auto* c = std::get_if<ConstDecl>(&st)) {
            const double v = ev.eval(*c->value);
            if (!std::isfinite(v)) throw ScheduleError(c->pos.line, c->pos.column, "const '" + c->name + "' is not finite");
            ev.bind(c->name, v);
        } else if (const auto* r = std::get_if<ResonateStmt>(&st)) {
            Segment seg;
            for (const QubitRef& q : r->qubits) {
                if (q.index >= n_qubits) {
                    throw ScheduleError(q.pos.line, q.pos.column,
                                        "qubit q" + std::to_string(q.index) + " out of range (" +
                                            std::to_string(n_qubits) + " qubits configured)");
                }
                for (std::size_t prev : seg.resonant) {
                    if (prev == q.index) {
                        throw ScheduleError(q.pos.line, q.pos.column,
                                            "qubit q" + std::to_string(q.index) + " listed twice");
                    }
                }
                seg.resonant.push_back(q.index);
            }
            seg.duration = checked_duration(ev, r->duration);
            out.segments.push_back(std::move(seg));
        } else {
            const auto& idle = std::get<IdleStmt>(st);
            Segment seg;
            seg.duration = checked_duration(ev, idle.duration);
            out.segments.push_back(std::move(seg));
        }
    }
    if (out.segments.empty()) throw ScheduleError(ast.close_pos.line, ast.close_pos.column, "no segments");
    return out;
}

double evaluate(const ExprPtr& expr, double lambda) {
    return Evaluator(lambda).eval(*expr);
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string emit(const PulseSchedule& schedule) {
    if (schedule.segments.empty()) throw ContractViolation("emit: schedule has no segments");
    std::string out = "schedule \"";
    for (char c : schedule.name) {
        if (c == '\n') throw ContractViolation("emit: schedule name contains a newline");
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\" {\n";
    for (const Segment& s : schedule.segments) {
        if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
            throw ContractViolation("emit: durations must be positive and finite");
        }
        if (s.coupling) throw ContractViolation("emit: per-segment coupling overrides have no text form");
        if (s.resonant.empty()) {
            out += "  idle for ";
        } else {
            out += "  resonate";
            for (std::size_t q : s.resonant) out += " q" + std::to_string(q);
            out += " for ";
        }
        out += format_number(s.duration) + ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace cqbus::schedule
