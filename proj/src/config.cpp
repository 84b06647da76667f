#include "fracl1/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fracl1 {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

json toml_scalar(const std::string& v, std::size_t lineno) {
    auto fail = [&] { throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value '" + v + "'"); };
    if (v.empty()) fail();
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') fail();
        return json::parse(v);  // TOML basic strings share JSON escapes
    }
    if (v == "true") return true;
    if (v == "false") return false;
    std::string digits;
    for (char ch : v) {
        if (ch != '_') digits.push_back(ch);
    }
    const bool integral = digits.find_first_of(".eE") == std::string::npos && digits.find("inf") == std::string::npos &&
                          digits.find("nan") == std::string::npos;
    std::size_t used = 0;
    try {
        if (integral) {
            const long long n = std::stoll(digits, &used);
            if (used == digits.size()) return n;
        } else {
            const double d = std::stod(digits, &used);
            if (used == digits.size()) return d;
        }
    } catch (const std::exception&) {
    }
    fail();
    return {};
}

// Flat TOML subset: [table] headers, key = scalar, single-line arrays of scalars.
json parse_toml(std::string_view text) {
    json root = json::object();
    json* table = &root;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad table header");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            table = &root[name];
            if (!table->is_object()) *table = json::object();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (table->contains(key)) throw std::invalid_argument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": unterminated array");
            json arr = json::array();
            std::stringstream items(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (!item.empty()) arr.push_back(toml_scalar(item, lineno));
            }
            (*table)[key] = arr;
        } else {
            (*table)[key] = toml_scalar(value, lineno);
        }
    }
    return root;
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
    }
}

StudyConfig from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config must be a table/object");
    const json& j = doc.contains("study") ? doc.at("study") : doc;
    StudyConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "problem") c.problem = get<std::string>(j, "problem");
        else if (key == "scheme") c.scheme = parse_scheme_kind(get<std::string>(j, "scheme"));
        else if (key == "alpha") c.alpha = get<double>(j, "alpha");
        else if (key == "sigma") c.sigma = get<double>(j, "sigma");
        else if (key == "r") c.r = get<double>(j, "r");
        else if (key == "M") c.M = get<std::size_t>(j, "M");
        else if (key == "levels") c.levels = get<std::size_t>(j, "levels");
        else if (key == "N") c.N = get<std::size_t>(j, "N");
        else if (key == "seed") c.seed = get<std::uint64_t>(j, "seed");
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    validate(c);
    return c;
}

}  // namespace

StudyConfig parse_study_config(std::string_view text, ConfigFormat format) {
    if (format == ConfigFormat::Json) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("invalid JSON config: ") + e.what());
        }
        return from_json(doc);
    }
    return from_json(parse_toml(text));
}

StudyConfig load_study_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return parse_study_config(text, ConfigFormat::Json);
    try {
        return parse_study_config(text, ConfigFormat::Toml);
    } catch (const std::invalid_argument&) {
        if (trim(text).rfind('{', 0) == 0) return parse_study_config(text, ConfigFormat::Json);
        throw;
    }
}

}  // namespace fracl1
