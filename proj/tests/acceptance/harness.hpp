#pragma once

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

namespace acceptance {

struct Harness {
    int failures = 0;
    std::string cli_path;

    void run(int number, const std::string& label, const std::function<void()>& body) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        try {
            body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                    label.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

struct CheckFailure : std::exception {
    std::string message;
    explicit CheckFailure(std::string msg) : message(std::move(msg)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

inline void require_close(double actual, double expected, double tol, const std::string& what) {
    if (!(actual >= expected - tol && actual <= expected + tol))
        throw CheckFailure(what + ": got " + std::to_string(actual) + ", expected " +
                           std::to_string(expected) + " within " + std::to_string(tol));
}

}  // namespace acceptance
