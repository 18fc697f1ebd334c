#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace perspective {

// Calendar date stored as days since 1970-01-01.
class Date {
 public:
  Date() = default;
  static Date from_days(int days) {
    Date d;
    d.days_ = days;
    return d;
  }
  // Accepts exactly "YYYY-MM-DD"; throws Error(input) otherwise.
  static Date parse(std::string_view text);

  int days() const { return days_; }
  std::string to_string() const;

  friend auto operator<=>(const Date&, const Date&) = default;
  friend int operator-(const Date& a, const Date& b) { return a.days_ - b.days_; }

 private:
  int days_ = 0;
};

}  // namespace perspective
