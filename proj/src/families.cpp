#include "wsone/families.hpp"

#include <stdexcept>

namespace wsone {

namespace {

std::string var(int i) { return "X" + std::to_string(i); }

// ex2 X1: Sing(X1) & (ex2 X2: X2 = X1 + 1 & (... & extra))
std::string succ_chain(int n, const std::string& innermost)
{
    std::string out;
    for (int i = n; i >= 1; --i) {
        std::string head = i == 1 ? "Sing(X1)" : var(i) + " = " + var(i - 1) + " + 1";
        std::string body = head;
        if (i == n && !innermost.empty())
            body += " & " + innermost;
        if (!out.empty())
            body += " & (" + out + ")";
        out = "ex2 " + var(i) + ": " + body;
    }
    return out;
}

std::string horn(int n)
{
    std::string out;
    for (int i = n; i >= 1; --i) {
        std::string head = i == 1 ? "Sing(X1)" : "Sub(" + var(i - 1) + ", " + var(i) + ")";
        std::string body = out.empty() ? head + " & " + var(i) + " = {0}" : head + " & " + out;
        out = "~ex2 " + var(i) + ": (" + body + ")";
    }
    return out;
}

} // namespace

const std::vector<std::string>& family_names()
{
    static const std::vector<std::string> names{"nestedEx", "chainSucc", "hornNested"};
    return names;
}

std::string gen_family(const FamilySpec& spec)
{
    if (spec.n < 1)
        throw std::invalid_argument("family parameter must be at least 1");
    if (spec.name == "nestedEx")
        return succ_chain(spec.n, "");
    if (spec.name == "chainSucc")
        return succ_chain(spec.n, var(1) + " = " + var(spec.n) + " + 1");
    if (spec.name == "hornNested")
        return horn(spec.n);
    throw std::invalid_argument("unknown family '" + spec.name + "'");
}

} // namespace wsone
