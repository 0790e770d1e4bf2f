from argproj.review.store import ReviewItem, ReviewQueueConfig, ReviewStore, UnknownItemError

__all__ = ["ReviewItem", "ReviewQueueConfig", "ReviewStore", "UnknownItemError"]
