#include "picolor/config.hpp"

#include "picolor/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace picolor {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(line, "invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

std::vector<int> parse_dims(std::string_view text, std::size_t line) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw ParseError(line, "hidden_dims must look like [d1, d2, ...]");
    }
    text = trim(text.substr(1, text.size() - 2));
    std::vector<int> dims;
    if (text.empty()) return dims;
    while (true) {
        const auto comma = text.find(',');
        dims.push_back(parse_number<int>(trim(text.substr(0, comma)), line, "hidden_dims"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return dims;
}

} // namespace

std::string to_string(ModelKind kind) { return kind == ModelKind::GcnStyle ? "GCN_STYLE" : "SAGE_STYLE"; }

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::Adam ? "ADAM" : "ADAMW"; }

Hyperparams parse_hyperparams(std::string_view text) {
    Hyperparams hp;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "model_kind") {
            if (value == "GCN_STYLE") hp.model_kind = ModelKind::GcnStyle;
            else if (value == "SAGE_STYLE") hp.model_kind = ModelKind::SageStyle;
            else throw ParseError(line_no, "model_kind must be GCN_STYLE or SAGE_STYLE");
        } else if (key == "embedding_dim") {
            hp.embedding_dim = parse_number<int>(value, line_no, key);
        } else if (key == "hidden_dims") {
            hp.hidden_dims = parse_dims(value, line_no);
        } else if (key == "num_colors") {
            hp.num_colors = parse_number<int>(value, line_no, key);
        } else if (key == "learning_rate") {
            hp.learning_rate = parse_number<double>(value, line_no, key);
        } else if (key == "dropout") {
            hp.dropout = parse_number<double>(value, line_no, key);
        } else if (key == "max_epochs") {
            hp.max_epochs = parse_number<int>(value, line_no, key);
        } else if (key == "patience") {
            hp.patience = parse_number<int>(value, line_no, key);
        } else if (key == "tolerance") {
            hp.tolerance = parse_number<double>(value, line_no, key);
        } else if (key == "seed") {
            hp.seed = parse_number<std::uint64_t>(value, line_no, key);
        } else if (key == "optimizer_kind") {
            if (value == "ADAM") hp.optimizer_kind = OptimizerKind::Adam;
            else if (value == "ADAMW") hp.optimizer_kind = OptimizerKind::AdamW;
            else throw ParseError(line_no, "optimizer_kind must be ADAM or ADAMW");
        } else if (key == "weight_decay") {
            hp.weight_decay = parse_number<double>(value, line_no, key);
        } else if (key == "q_regularization") {
            hp.q_regularization = parse_number<double>(value, line_no, key);
            if (hp.q_regularization != 0.0) throw ParseError(line_no, "q_regularization is not supported");
        } else {
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    hp.validate();
    return hp;
}

Hyperparams load_hyperparams(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_hyperparams(buffer.str());
}

namespace {

// Shortest text that parses back to the same double.
std::string real(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string render_hyperparams(const Hyperparams& hp) {
    std::ostringstream out;
    out << "model_kind = " << to_string(hp.model_kind) << '\n';
    out << "embedding_dim = " << hp.embedding_dim << '\n';
    out << "hidden_dims = [";
    for (std::size_t i = 0; i < hp.hidden_dims.size(); ++i) out << (i ? ", " : "") << hp.hidden_dims[i];
    out << "]\n";
    out << "num_colors = " << hp.num_colors << '\n';
    out << "learning_rate = " << real(hp.learning_rate) << '\n';
    out << "dropout = " << real(hp.dropout) << '\n';
    out << "max_epochs = " << hp.max_epochs << '\n';
    out << "patience = " << hp.patience << '\n';
    out << "tolerance = " << real(hp.tolerance) << '\n';
    out << "seed = " << hp.seed << '\n';
    out << "optimizer_kind = " << to_string(hp.optimizer_kind) << '\n';
    out << "weight_decay = " << real(hp.weight_decay) << '\n';
    return out.str();
}

namespace {

struct PresetRow {
    const char* name;
    int q;
    int d0;
    int d1;
    double lr;
    double dropout;
};

// SAGE-style with AdamW.
constexpr PresetRow kColorPresets[] = {
    {"anna", 11, 43, 22, 0.03507, 0.3298},
    {"jean", 10, 50, 62, 0.01663, 0.3185},
    {"myciel5", 6, 16, 18, 0.01333, 0.3964},
    {"myciel6", 7, 8, 22, 0.01779, 0.2225},
    {"queen5-5", 5, 77, 32, 0.02988, 0.3784},
    {"queen6-6", 7, 20, 12, 0.05105, 0.3425},
    {"queen7-7", 7, 67, 12, 0.02175, 0.2339},
    {"queen8-8", 9, 32, 10, 0.02728, 0.2878},
    {"queen8-12", 12, 107, 23, 0.01730, 0.1796},
    {"queen9-9", 10, 109, 16, 0.02636, 0.3257},
    {"queen11-11", 11, 75, 25, 0.04600, 0.2974},
    {"queen13-13", 13, 112, 199, 0.14426, 0.1571},
};

// GCN-style with Adam.
constexpr PresetRow kCitationPresets[] = {
    {"cora", 5, 2342, 3496, 0.00556, 0.0148},
    {"citeseer", 6, 5127, 2472, 0.00983, 0.0161},
    {"pubmed", 8, 5137, 6082, 0.02966, 0.1715},
};

Hyperparams from_row(const PresetRow& row, ModelKind kind, OptimizerKind opt) {
    Hyperparams hp;
    hp.model_kind = kind;
    hp.embedding_dim = row.d0;
    hp.hidden_dims = {row.d1};
    hp.num_colors = row.q;
    hp.learning_rate = row.lr;
    hp.dropout = row.dropout;
    hp.max_epochs = 100000;
    hp.patience = 500;
    hp.tolerance = 1e-4;
    hp.seed = 0;
    hp.optimizer_kind = opt;
    hp.weight_decay = opt == OptimizerKind::AdamW ? 0.01 : 0.0;
    return hp;
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& row : kColorPresets) out.emplace_back(row.name);
        for (const auto& row : kCitationPresets) out.emplace_back(row.name);
        return out;
    }();
    return names;
}

Hyperparams preset(std::string_view name) {
    for (const auto& row : kColorPresets)
        if (name == row.name) return from_row(row, ModelKind::SageStyle, OptimizerKind::AdamW);
    for (const auto& row : kCitationPresets)
        if (name == row.name) return from_row(row, ModelKind::GcnStyle, OptimizerKind::Adam);
    throw InputError("unknown preset '" + std::string(name) + "'");
}

} // namespace picolor
