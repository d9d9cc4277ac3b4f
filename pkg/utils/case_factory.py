import importlib
import inspect
import logging
import pkgutil
from typing import Dict, List, Type

from utils.base_case import BaseCase, CaseConfigError

logger = logging.getLogger(__name__)


class CaseFactory:
    """Factory for discovering and creating verification cases."""

    @staticmethod
    def load_cases_from_module(module_name: str = "cases") -> List[Type[BaseCase]]:
        """Load all case classes from a package.

        Args:
            module_name: The name of the package to load cases from

        Returns:
            A list of case classes, one per case name
        """
        try:
            module = importlib.import_module(module_name)
        except ImportError as e:
            logger.error(f"Error loading cases from module {module_name}: {str(e)}", exc_info=True)
            return []

        case_classes: List[Type[BaseCase]] = []
        seen_names: Dict[str, str] = {}
        for _, submodule_name, is_pkg in pkgutil.iter_modules(
            module.__path__, module.__name__ + "."
        ):
            if is_pkg:
                continue
            try:
                submodule = importlib.import_module(submodule_name)
            except Exception as e:
                logger.warning(f"Error loading submodule {submodule_name}: {str(e)}")
                continue
            for _, obj in inspect.getmembers(submodule, inspect.isclass):
                # Skip BaseCase itself and classes imported from elsewhere
                if obj is BaseCase or not issubclass(obj, BaseCase):
                    continue
                if obj.__module__ != submodule.__name__:
                    continue
                if obj.case_name in seen_names:
                    logger.warning(
                        f"Duplicate case name '{obj.case_name}' in {obj.__name__} "
                        f"(already defined by {seen_names[obj.case_name]}), skipping"
                    )
                    continue
                seen_names[obj.case_name] = obj.__name__
                case_classes.append(obj)
                logger.debug(f"Found case class: {obj.__name__} in {submodule_name}")

        case_classes.sort(key=lambda case_class: case_class.case_name)
        logger.debug(f"Found {len(case_classes)} case classes in module {module_name}")
        return case_classes

    @staticmethod
    def get_case_class(case_id: str, module_name: str = "cases") -> Type[BaseCase]:
        """Resolve a case name or alias.

        Raises:
            CaseConfigError: If no case has that name or alias
        """
        case_classes = CaseFactory.load_cases_from_module(module_name)
        for case_class in case_classes:
            if case_id == case_class.case_name or case_id in case_class.aliases:
                return case_class
        available = ", ".join(case_class.case_name for case_class in case_classes)
        raise CaseConfigError(f"Unknown case '{case_id}'. Available cases: {available}")

    @staticmethod
    def create_case(case_id: str, module_name: str = "cases") -> BaseCase:
        return CaseFactory.get_case_class(case_id, module_name)()

    @staticmethod
    def get_available_cases() -> Dict[str, str]:
        """Get information about all available cases.

        Returns:
            Dictionary mapping case names to their descriptions
        """
        case_info = {}
        for case_class in CaseFactory.load_cases_from_module("cases"):
            description = case_class.__doc__ or case_class.case_description
            case_info[case_class.case_name] = inspect.cleandoc(description)
        return case_info
