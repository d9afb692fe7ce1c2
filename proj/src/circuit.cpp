#include "cvsim/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace cvsim {

const char *gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::Vacuum:
        return "Vacuum";
    case GateKind::Squeezed:
        return "Squeezed";
    case GateKind::Coherent:
        return "Coherent";
    case GateKind::Xgate:
        return "Xgate";
    case GateKind::Zgate:
        return "Zgate";
    case GateKind::Dgate:
        return "Dgate";
    case GateKind::Sgate:
        return "Sgate";
    case GateKind::Rgate:
        return "Rgate";
    case GateKind::Fourier:
        return "Fourier";
    case GateKind::BSgate:
        return "BSgate";
    case GateKind::Invert:
        return "Invert";
    case GateKind::MeasureX:
        return "MeasureX";
    }
    return "?";
}

bool is_preparation(GateKind kind) {
    return kind == GateKind::Vacuum || kind == GateKind::Squeezed ||
           kind == GateKind::Coherent;
}

namespace {

struct Arity {
    int min_params;
    int max_params;
    int targets;
};

const std::map<std::string, std::pair<GateKind, Arity>> &gate_table() {
    static const std::map<std::string, std::pair<GateKind, Arity>> table = {
        {"Vacuum", {GateKind::Vacuum, {0, 0, 1}}},
        {"Squeezed", {GateKind::Squeezed, {1, 2, 1}}},
        {"Coherent", {GateKind::Coherent, {1, 2, 1}}},
        {"Xgate", {GateKind::Xgate, {1, 1, 1}}},
        {"Zgate", {GateKind::Zgate, {1, 1, 1}}},
        {"Dgate", {GateKind::Dgate, {1, 2, 1}}},
        {"Sgate", {GateKind::Sgate, {1, 2, 1}}},
        {"Rgate", {GateKind::Rgate, {1, 1, 1}}},
        {"Fourier", {GateKind::Fourier, {0, 0, 1}}},
        {"BSgate", {GateKind::BSgate, {1, 2, 2}}},
        {"Invert", {GateKind::Invert, {2, 2, 1}}},
        {"MeasureX", {GateKind::MeasureX, {0, 0, 1}}},
    };
    return table;
}

class LineParser {
  public:
    LineParser(const std::string &text, int line_no)
        : text_(text), line_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(byte(pos_)))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool consume(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string &what) {
        if (!consume(c))
            fail("expected '" + std::string(1, c) + "' " + what);
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(byte(pos_)) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start)
            fail("expected an identifier");
        return text_.substr(start, pos_ - start);
    }

    double number() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-')
            ++pos_;
        bool digits = false;
        while (pos_ < text_.size() &&
               (std::isdigit(byte(pos_)) || text_[pos_] == '.')) {
            digits = digits || std::isdigit(byte(pos_));
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (peek() == '+' || peek() == '-')
                ++pos_;
            while (pos_ < text_.size() && std::isdigit(byte(pos_)))
                ++pos_;
        }
        if (!digits)
            fail("expected a number");
        return std::stod(text_.substr(start, pos_ - start));
    }

    // expression := [-] (pi | number) [/ number]
    double expression() {
        skip_ws();
        double sign = 1.0;
        if (consume('-'))
            sign = -1.0;
        skip_ws();
        double value;
        if (std::isalpha(byte(pos_))) {
            const std::size_t at = pos_;
            const std::string word = identifier();
            if (word != "pi")
                fail_at(at, "unknown constant '" + word + "'");
            value = kPi;
        } else {
            value = number();
        }
        if (consume('/')) {
            const std::size_t at = pos_;
            const double denom = number();
            if (denom == 0.0)
                fail_at(at, "division by zero");
            value /= denom;
        }
        return sign * value;
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(byte(pos_)))
            ++pos_;
        if (pos_ == start)
            fail("expected an integer");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string &message) {
        throw ParseError(line_, int(pos_) + 1, message);
    }
    [[noreturn]] void fail_at(std::size_t pos, const std::string &message) {
        throw ParseError(line_, int(pos) + 1, message);
    }

    std::size_t position() const { return pos_; }

  private:
    unsigned char byte(std::size_t i) const {
        return static_cast<unsigned char>(text_[i]);
    }
    const std::string &text_;
    int line_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string &line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

} // namespace

void Circuit::validate() const {
    std::vector<bool> measured(mode_count, false);
    std::vector<bool> gated(mode_count, false);
    for (const auto &op : ops) {
        const int line = op.line;
        for (int t : op.targets)
            if (t < 0 || t >= mode_count)
                throw ParseError(line, 1,
                                 "target q[" + std::to_string(t) +
                                     "] out of range for " +
                                     std::to_string(mode_count) + " modes");
        if (op.kind == GateKind::BSgate) {
            if (op.targets.size() != 2 || op.targets[0] == op.targets[1])
                throw ParseError(line, 1,
                                 "BSgate requires two distinct targets");
        } else if (op.targets.size() != 1) {
            throw ParseError(line, 1, std::string(gate_name(op.kind)) +
                                          " takes exactly one target");
        }
        for (int t : op.targets) {
            if (measured[t])
                throw ParseError(line, 1,
                                 "mode q[" + std::to_string(t) +
                                     "] already measured");
            if (is_preparation(op.kind) && gated[t])
                throw ParseError(line, 1,
                                 "preparation after a gate on mode q[" +
                                     std::to_string(t) + "]");
            if (!is_preparation(op.kind))
                gated[t] = true;
            if (op.kind == GateKind::MeasureX)
                measured[t] = true;
        }
    }
}

Circuit parse_circuit(const std::string &source) {
    std::istringstream in(source);
    std::string raw;
    int line_no = 0;
    Circuit circuit;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        LineParser p(line, line_no);
        if (p.at_end())
            continue;
        if (!have_header) {
            const auto at = p.position();
            const std::string word = p.identifier();
            if (word != "modes")
                p.fail_at(at, "expected 'modes N' header, got '" + word + "'");
            circuit.mode_count = p.integer();
            if (circuit.mode_count < 1)
                p.fail("mode count must be positive");
            if (!p.at_end())
                p.fail("trailing input after mode count");
            have_header = true;
            continue;
        }
        const auto name_at = p.position();
        const std::string name = p.identifier();
        std::vector<double> params;
        if (p.consume('(')) {
            if (!p.consume(')')) {
                params.push_back(p.expression());
                while (p.consume(','))
                    params.push_back(p.expression());
                p.expect(')', "to close the argument list");
            }
        }
        p.expect('|', "between gate and targets");
        std::vector<int> targets;
        while (true) {
            const auto at = p.position();
            const std::string q = p.identifier();
            if (q != "q")
                p.fail_at(at, "expected target of the form q[i]");
            p.expect('[', "after q");
            targets.push_back(p.integer());
            p.expect(']', "after target index");
            if (!p.consume(','))
                break;
        }
        if (!p.at_end())
            p.fail("trailing input after statement");

        if (name == "DisplacedSqueezed") {
            // Dgate(a e^{i phi_a}) then Sgate(r, phi_r), per the usual
            // displaced-squeezed preparation
            if (params.size() != 4)
                throw ParseError(line_no, int(name_at) + 1,
                                 "DisplacedSqueezed takes 4 arguments");
            if (targets.size() != 1)
                throw ParseError(line_no, int(name_at) + 1,
                                 "DisplacedSqueezed takes one target");
            const double a = params[0], phi_a = params[1];
            circuit.ops.push_back({GateKind::Dgate,
                                   targets,
                                   {a * std::cos(phi_a), a * std::sin(phi_a)},
                                   line_no});
            // a pure real displacement stays in the 1-parameter form
            if (params[1] == 0.0)
                circuit.ops.back().params = {a};
            circuit.ops.push_back(
                {GateKind::Sgate, targets, {params[2], params[3]}, line_no});
            if (params[3] == 0.0)
                circuit.ops.back().params = {params[2]};
            continue;
        }

        const auto it = gate_table().find(name);
        if (it == gate_table().end())
            throw ParseError(line_no, int(name_at) + 1,
                             "unknown gate '" + name + "'");
        const auto [kind, arity] = it->second;
        if (int(params.size()) < arity.min_params ||
            int(params.size()) > arity.max_params)
            throw ParseError(line_no, int(name_at) + 1,
                             name + " takes " +
                                 std::to_string(arity.min_params) +
                                 (arity.max_params != arity.min_params
                                      ? ".." + std::to_string(arity.max_params)
                                      : "") +
                                 " arguments, got " +
                                 std::to_string(params.size()));
        if (int(targets.size()) != arity.targets)
            throw ParseError(line_no, int(name_at) + 1,
                             name + " takes " + std::to_string(arity.targets) +
                                 " target(s), got " +
                                 std::to_string(targets.size()));
        for (double v : params)
            if (!std::isfinite(v))
                throw ParseError(line_no, int(name_at) + 1,
                                 "non-finite parameter");
        circuit.ops.push_back({kind, std::move(targets), std::move(params),
                               line_no});
    }
    if (!have_header)
        throw ParseError(line_no ? line_no : 1, 1, "missing 'modes N' header");
    circuit.validate();
    return circuit;
}

std::string print_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "modes " << circuit.mode_count << "\n";
    char buf[64];
    for (const auto &op : circuit.ops) {
        out << gate_name(op.kind);
        if (!op.params.empty()) {
            out << "(";
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", op.params[i]);
                out << (i ? ", " : "") << buf;
            }
            out << ")";
        }
        out << " | ";
        for (std::size_t i = 0; i < op.targets.size(); ++i)
            out << (i ? ", " : "") << "q[" << op.targets[i] << "]";
        out << "\n";
    }
    return out.str();
}

namespace {
bool grid_supported_angle(double theta) {
    const double half_pi = kPi / 2.0;
    for (double allowed : {half_pi, -half_pi, kPi, -kPi})
        if (std::abs(theta - allowed) < 1e-12)
            return true;
    return false;
}
} // namespace

BackendClass classify(const Circuit &circuit) {
    BackendClass cls;
    cls.gaussian_compatible = true;
    cls.grid_compatible = circuit.mode_count <= 2;
    cls.fock_compatible = circuit.mode_count <= 2;
    for (const auto &op : circuit.ops) {
        switch (op.kind) {
        case GateKind::Invert:
            cls.gaussian_compatible = false;
            cls.fock_compatible = false;
            break;
        case GateKind::Rgate:
            if (!grid_supported_angle(op.params[0]))
                cls.grid_compatible = false;
            break;
        case GateKind::BSgate:
            cls.grid_compatible = false;
            break;
        case GateKind::Squeezed:
            if (op.params.size() == 2 && op.params[1] != 0.0)
                cls.grid_compatible = false;
            break;
        default:
            break;
        }
    }
    return cls;
}

} // namespace cvsim
