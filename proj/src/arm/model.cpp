#include "relex/arm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace relex {

bool within_limits(const ArmModel& arm, const Joints& q) {
    for (size_t j = 0; j < q.size(); ++j)
        if (q[j] < arm.joint_limits[j][0] || q[j] > arm.joint_limits[j][1]) return false;
    return true;
}

std::array<Vec2, 4> joint_positions(const ArmModel& arm, const Joints& q) {
    std::array<Vec2, 4> p;
    p[0] = arm.base;
    double heading = arm.base_heading;
    for (size_t j = 0; j < q.size(); ++j) {
        heading += q[j];
        p[j + 1] = {p[j][0] + arm.link_lengths[j] * std::cos(heading),
                    p[j][1] + arm.link_lengths[j] * std::sin(heading)};
    }
    return p;
}

Frame forward_kinematics(const ArmModel& arm, const Joints& q) {
    if (!within_limits(arm, q)) throw std::domain_error("joint state outside limits");
    const auto p = joint_positions(arm, q);
    return {p[3], arm.base_heading + q[0] + q[1] + q[2]};
}

std::array<Vec2, 2> frame_points(const Frame& frame, double d) {
    const double c = std::cos(frame.heading), s = std::sin(frame.heading);
    return {Vec2{frame.position[0] + d * c, frame.position[1] + d * s},
            Vec2{frame.position[0] - d * s, frame.position[1] + d * c}};
}

double joint_space_loss(const Joints& a, const Joints& b) {
    double sum = 0.0;
    for (size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
    return sum / static_cast<double>(a.size());
}

namespace {

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

double op_space_loss(const Joints& pred, const Joints& expert, const ArmModel& arm, double d) {
    const auto pp = frame_points(forward_kinematics(arm, pred), d);
    const auto pe = frame_points(forward_kinematics(arm, expert), d);
    return dist(pp[0], pe[0]) + dist(pp[1], pe[1]);
}

Joints op_space_loss_gradient(const Joints& pred, const Joints& expert, const ArmModel& arm,
                              double d) {
    const Frame fp = forward_kinematics(arm, pred);
    const auto pp = frame_points(fp, d);
    const auto pe = frame_points(forward_kinematics(arm, expert), d);
    const auto joints = joint_positions(arm, pred);
    const double c = std::cos(fp.heading), s = std::sin(fp.heading);
    // point 0 rides the x axis, point 1 the y axis; their headings advance
    // with every joint, so d(point)/dq_k = J_k + d * (axis rotated 90 deg)
    const std::array<Vec2, 2> axis_rate{Vec2{-d * s, d * c}, Vec2{-d * c, -d * s}};

    Joints grad{0.0, 0.0, 0.0};
    for (int point = 0; point < 2; ++point) {
        const double len = dist(pp[point], pe[point]);
        if (len == 0.0) continue;
        const Vec2 unit{(pp[point][0] - pe[point][0]) / len, (pp[point][1] - pe[point][1]) / len};
        for (size_t k = 0; k < 3; ++k) {
            const Vec2 jac{-(fp.position[1] - joints[k][1]), fp.position[0] - joints[k][0]};
            grad[k] += unit[0] * (jac[0] + axis_rate[point][0]) +
                       unit[1] * (jac[1] + axis_rate[point][1]);
        }
    }
    return grad;
}

double combined_loss(const Joints& pred, const Joints& expert, const ArmModel& arm, double d,
                     double lambda) {
    return lambda * joint_space_loss(pred, expert) +
           (1.0 - lambda) * op_space_loss(pred, expert, arm, d);
}

}  // namespace relex
