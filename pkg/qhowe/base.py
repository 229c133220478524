import abc
import logging

from qhowe import exception


class HoweBase(object):
    """Common behaviour of the rank carrying value objects

    Subclasses provide ``__str__`` and ``_key``; equality and hashing
    follow ``_key`` and the class.
    """

    __metaclass__ = abc.ABCMeta
    log = logging.getLogger("base.HoweBase")

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, str(self))

    @abc.abstractmethod
    def __str__(self):
        pass

    @abc.abstractmethod
    def _key(self):
        pass

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.__class__.__name__, self._key()))

    def __getitem__(self, key):
        return self.__getattribute__(key)

    @classmethod
    def validate_rank(cls, n):
        """Check that ``n`` is a usable rank

        :param n: the rank of the symplectic group
        :return: the rank as an int
        :rtype: int
        """

        if isinstance(n, bool) or not isinstance(n, int):
            err_msg = "Rank must be an integer, got %r" % (n,)
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        if n < 1:
            err_msg = "Rank must be at least 1, got %s" % n
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return n

    @classmethod
    def check_same_rank(cls, left, right):
        if left.n != right.n:
            err_msg = "Rank mismatch: %s and %s" % (left.n, right.n)
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return left.n
