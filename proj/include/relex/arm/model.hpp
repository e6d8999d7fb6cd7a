#pragma once

#include <array>
#include <numbers>

namespace relex {

using Joints = std::array<double, 3>;
using Vec2 = std::array<double, 2>;

struct Frame {
    Vec2 position{0.0, 0.0};
    double heading = 0.0;
};

// Planar 3-revolute-joint arm.
struct ArmModel {
    std::array<double, 3> link_lengths{1.0, 0.8, 0.6};
    std::array<std::array<double, 2>, 3> joint_limits{
        {{-std::numbers::pi, std::numbers::pi},
         {-std::numbers::pi, std::numbers::pi},
         {-std::numbers::pi, std::numbers::pi}}};
    Vec2 base{0.0, 0.0};
    double base_heading = 0.0;
};

bool within_limits(const ArmModel& arm, const Joints& q);

// Base pivot, the two elbows, and the tip.
std::array<Vec2, 4> joint_positions(const ArmModel& arm, const Joints& q);

// Tip frame; rejects out-of-limit q.
Frame forward_kinematics(const ArmModel& arm, const Joints& q);

// The frame as two points: origin + d*x_hat and origin + d*y_hat.
std::array<Vec2, 2> frame_points(const Frame& frame, double d);

// Mean squared per-joint difference.
double joint_space_loss(const Joints& a, const Joints& b);

// Sum of distances between corresponding frame points of the two tip
// frames; zero iff the frames coincide.
double op_space_loss(const Joints& pred, const Joints& expert, const ArmModel& arm, double d);

// d(op_space_loss)/d(pred), via the arm Jacobian.
Joints op_space_loss_gradient(const Joints& pred, const Joints& expert, const ArmModel& arm,
                              double d);

// lambda * joint_space + (1 - lambda) * op_space
double combined_loss(const Joints& pred, const Joints& expert, const ArmModel& arm, double d,
                     double lambda);

}  // namespace relex
