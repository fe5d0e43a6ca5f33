#include <doctest.h>

#include <random>

#include "coseg/metrics.hpp"
#include "test_util.hpp"

using namespace coseg;

TEST_CASE("box IoU cases") {
  Rect a{0, 0, 10, 10};
  CHECK(box_iou(a, a) == doctest::Approx(1.0));
  CHECK(box_iou(a, Rect{20, 20, 5, 5}) == 0.0);
  CHECK(box_iou(a, Rect{5, 0, 10, 10}) == doctest::Approx(1.0 / 3));
}

TEST_CASE("box IoU is symmetric") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 20);
  for (int t = 0; t < 100; ++t) {
    Rect a{u(rng), u(rng), u(rng), u(rng)};
    Rect b{u(rng), u(rng), u(rng), u(rng)};
    CHECK(box_iou(a, b) == box_iou(b, a));
    CHECK(box_iou(a, b) >= 0.0);
    CHECK(box_iou(a, b) <= 1.0);
  }
}

TEST_CASE("corloc uses strict inequality") {
  Rect gt{0, 0, 10, 10};
  CHECK(corloc({gt, gt}, {gt, gt}) == 1.0);
  // IoU exactly 0.5: pred is the left half extended to overlap 50%
  Rect half{0, 0, 10, 5};
  CHECK(box_iou(half, gt) == doctest::Approx(0.5));
  CHECK(corloc({half}, {gt}) == 0.0);
  // (0.6, 0.4) -> one of two localized
  Rect iou06{0, 0, 10, 6};  // inter 60, union 100 -> 0.6
  CHECK(box_iou(iou06, gt) == doctest::Approx(0.6));
  Rect iou04{0, 0, 10, 4};  // inter 40, union 100 -> 0.4
  CHECK(corloc({iou06, iou04}, {gt, gt}) == doctest::Approx(0.5));
}

TEST_CASE("pixel metrics arithmetic") {
  // one image, 5 superpixels of 10 pixels each, 2 foreground (40%)
  InstanceSet set;
  ImageInstance img;
  img.width = img.height = 10;
  for (int j = 0; j < 5; ++j) {
    Superpixel sp;
    sp.id = j;
    sp.features = Eigen::VectorXd::Zero(1);
    sp.position = Eigen::Vector2d(0.1 * j, 0.5);
    sp.color = Eigen::Vector3d(0.5, 0.5, 0.5);
    sp.saliency_m = 0.5;
    sp.pixel_count = 10;
    sp.gt_foreground = (j < 2);
    img.superpixels.push_back(sp);
  }
  BoundingBox box;
  box.id = 0;
  box.members = {0, 1};
  box.rect = Rect{0, 0, 5, 5};
  box.features = Eigen::VectorXd::Zero(1);
  box.saliency_m = 0.5;
  img.boxes.push_back(box);
  set.images.push_back(img);

  Labeling pred;
  pred.images.emplace_back();
  auto& lab = pred.images[0];

  SUBCASE("perfect prediction") {
    lab.labels = {1, 1, 0, 0, 0};
    PixelMetrics pm = pixel_metrics(pred, set);
    CHECK(pm.pixel_ap == doctest::Approx(1.0));
    CHECK(pm.jaccard_iou == doctest::Approx(1.0));
  }
  SUBCASE("all background with 40% foreground") {
    lab.labels = {0, 0, 0, 0, 0};
    PixelMetrics pm = pixel_metrics(pred, set);
    CHECK(pm.pixel_ap == doctest::Approx(0.6));
    CHECK(pm.jaccard_iou == doctest::Approx(0.0));
  }
  SUBCASE("half of foreground, no false positives") {
    lab.labels = {1, 0, 0, 0, 0};
    PixelMetrics pm = pixel_metrics(pred, set);
    CHECK(pm.jaccard_iou == doctest::Approx(0.5));
  }
  SUBCASE("missing ground truth is an error, not zero") {
    set.images[0].superpixels[3].gt_foreground.reset();
    lab.labels = {1, 1, 0, 0, 0};
    CHECK_THROWS(pixel_metrics(pred, set));
  }
}
